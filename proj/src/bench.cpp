#include "evicomb/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "evicomb/sampling.hpp"

namespace evicomb {

namespace {

volatile double bench_sink = 0.0;

Frame bench_frame(std::size_t frame_size) {
    if (frame_size < 2) {
        throw MassError("bench needs a frame of at least two labels");
    }
    std::vector<std::string> labels;
    labels.reserve(frame_size);
    for (std::size_t i = 0; i < frame_size; ++i) {
        labels.push_back("h" + std::to_string(i));
    }
    return Frame::make(std::move(labels));
}

/// Runs `body` options.warmup times untimed, then options.reps timed runs.
/// Reports the median timing as mean_ns (robust to scheduler spikes) and the
/// sample deviation across the repetitions.
template <typename Body>
BenchRecord measure(std::string method, std::size_t n, std::size_t frame_size,
                    const BenchOptions& options, Body&& body) {
    if (options.reps == 0) {
        throw Error("bench needs at least one repetition");
    }
    for (std::size_t i = 0; i < options.warmup; ++i) {
        bench_sink = body();
    }
    std::vector<double> timings;
    timings.reserve(options.reps);
    for (std::size_t i = 0; i < options.reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        bench_sink = body();
        const auto stop = std::chrono::steady_clock::now();
        timings.push_back(static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
                .count()));
    }

    std::sort(timings.begin(), timings.end());
    const std::size_t mid = timings.size() / 2;
    const double median = timings.size() % 2 == 1
                              ? timings[mid]
                              : 0.5 * (timings[mid - 1] + timings[mid]);

    double mean = 0.0;
    for (double t : timings) mean += t;
    mean /= static_cast<double>(timings.size());
    double var = 0.0;
    for (double t : timings) var += (t - mean) * (t - mean);
    const double stddev =
        timings.size() > 1
            ? std::sqrt(var / static_cast<double>(timings.size() - 1))
            : 0.0;

    BenchRecord record;
    record.method = std::move(method);
    record.n = n;
    record.frame_size = frame_size;
    record.mean_ns = median;
    record.std_ns = stddev;
    record.reps = options.reps;
    return record;
}

} // namespace

BenchRecord bench_triplet_fold(std::size_t n, std::size_t frame_size,
                               const BenchOptions& options) {
    if (n == 0) throw Error("bench needs n >= 1");
    const Frame frame = bench_frame(frame_size);
    Sampler sampler(options.seed);
    std::vector<TripletMass> ts;
    ts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ts.push_back(sampler.triplet(frame));

    return measure("triplet", n, frame_size, options, [&] {
        const TripletMass combined = fold_combine(ts);
        return combined.m1() + combined.m2();
    });
}

BenchRecord bench_dichotomous_repeated(std::size_t n, std::size_t frame_size,
                                       const BenchOptions& options) {
    if (n == 0) throw Error("bench needs n >= 1");
    const Frame frame = bench_frame(frame_size);
    Sampler sampler(options.seed);
    std::vector<DichotomousMass> ds;
    ds.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ds.push_back(sampler.dichotomous(frame, 0));

    return measure("dichotomous", n, frame_size, options, [&] {
        const DichotomousMass combined = combine_repeated(ds);
        return combined.p() + combined.c();
    });
}

BenchRecord bench_oracle_combine(std::size_t n, std::size_t frame_size,
                                 const BenchOptions& options) {
    if (n == 0) throw Error("bench needs n >= 1");
    if (frame_size > oracle_bench_frame_cap) {
        throw FrameError(FrameError::Reason::too_many_labels,
                         "oracle bench refuses a frame of " +
                             std::to_string(frame_size) + " labels (cap " +
                             std::to_string(oracle_bench_frame_cap) + ")");
    }
    const Frame frame = bench_frame(frame_size);
    Sampler sampler(options.seed);
    std::vector<MassFunction> ms;
    ms.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ms.push_back(sampler.mass_full_support(frame));

    return measure("oracle", n, frame_size, options, [&] {
        const MassFunction combined = combine_all(ms);
        return combined.mass_bits(frame.full_mask());
    });
}

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
    out << "method,n,frame_size,mean_ns,std_ns,reps\n";
    out << std::setprecision(12);
    for (const BenchRecord& r : records) {
        out << r.method << ',' << r.n << ',' << r.frame_size << ',' << r.mean_ns
            << ',' << r.std_ns << ',' << r.reps << '\n';
    }
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error("linear_fit needs x and y of equal length");
    }
    if (x.size() < 2) {
        throw Error("linear_fit needs at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw Error("linear_fit needs at least two distinct x values");
    }

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    if (syy == 0.0) {
        fit.r2 = 1.0; // constant y is fit exactly by the horizontal line
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - (fit.slope * x[i] + fit.intercept);
            ss_res += e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

} // namespace evicomb

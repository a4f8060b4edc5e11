#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace evicomb {

/// One measured configuration. mean_ns is the median of the repetition
/// timings (robust to scheduler spikes); std_ns the sample deviation.
struct BenchRecord {
    std::string method;
    std::size_t n = 0;
    std::size_t frame_size = 0;
    double mean_ns = 0.0;
    double std_ns = 0.0;
    std::size_t reps = 0;
};

struct BenchOptions {
    std::size_t reps = 5;
    std::size_t warmup = 3;
    std::uint64_t seed = 0;
};

/// The oracle bench refuses frames above this: its cost grows with the
/// square of the powerset size.
inline constexpr std::size_t oracle_bench_frame_cap = 16;

/// Times fold_combine over n random triplets on a frame of the given size.
BenchRecord bench_triplet_fold(std::size_t n, std::size_t frame_size,
                               const BenchOptions& options);

/// Times combine_repeated over an n-long same-focus dichotomous chain.
BenchRecord bench_dichotomous_repeated(std::size_t n, std::size_t frame_size,
                                       const BenchOptions& options);

/// Times combine_all over n general mass functions supported on the full
/// powerset. Frame size capped at oracle_bench_frame_cap.
BenchRecord bench_oracle_combine(std::size_t n, std::size_t frame_size,
                                 const BenchOptions& options);

/// Header "method,n,frame_size,mean_ns,std_ns,reps" plus one row per record.
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);

/// Ordinary least squares y = slope * x + intercept with the coefficient of
/// determination.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

} // namespace evicomb

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "evicomb/bench.hpp"
#include "evicomb/io.hpp"
#include "evicomb/sampling.hpp"

namespace {

using namespace evicomb;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(out_path, text);
    }
}

// ---------------------------------------------------------------------------
// combine

std::string trail_json(const std::vector<double>& trail) {
    std::string out = "[";
    for (std::size_t i = 0; i < trail.size(); ++i) {
        if (i > 0) out += ", ";
        out += io::format_number(trail[i]);
    }
    out += "]";
    return out;
}

std::string combine_output(const std::string& method, const std::vector<double>& trail,
                           const std::string& result_json) {
    std::string out = "{\n";
    out += "  \"method\": \"" + method + "\",\n";
    out += "  \"k_inverse_trail\": " + trail_json(trail) + ",\n";
    out += "  \"result\": " + result_json + "\n";
    out += "}\n";
    return out;
}

/// Left fold of the general orthogonal sum, recording 1 - conflict per step.
MassFunction general_fold(std::vector<MassFunction> ms, std::vector<double>& trail) {
    MassFunction acc = std::move(ms.front());
    for (std::size_t i = 1; i < ms.size(); ++i) {
        trail.push_back(1.0 - conflict(acc, ms[i]));
        acc = combine_pair(acc, ms[i]);
    }
    return acc;
}

TripletMass triplet_fold_with_trail(const std::vector<TripletMass>& ts,
                                    std::vector<double>& trail) {
    TripletMass acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) {
        trail.push_back(1.0 - conflict(to_general(acc), to_general(ts[i])));
        acc = combine_pair_auto(acc, ts[i]);
    }
    return acc;
}

DichotomousMass dichotomous_fold_with_trail(const std::vector<DichotomousMass>& ds,
                                            std::vector<double>& trail) {
    DichotomousMass acc = ds.front();
    for (std::size_t i = 1; i < ds.size(); ++i) {
        trail.push_back(1.0 - acc.p() * ds[i].c() - acc.c() * ds[i].p());
        const std::array<DichotomousMass, 2> pair{acc, ds[i]};
        acc = combine_repeated(pair);
    }
    return acc;
}

[[noreturn]] void reject_method(const std::string& method, const io::EvidenceFile& file) {
    throw Error("method '" + method + "' does not apply to " +
                io::to_string(file.kind) + " evidence");
}

int run_combine(const std::string& input, std::string method, double lambda,
                const std::string& out_path) {
    const io::EvidenceFile file = io::read_evidence_file(input);

    if (method == "auto") {
        switch (file.kind) {
            case io::EvidenceKind::general: method = "oracle"; break;
            case io::EvidenceKind::triplet: method = "triplet"; break;
            case io::EvidenceKind::dichotomous: method = "dichotomous"; break;
        }
    }

    std::vector<double> trail;
    std::string result;

    if (method == "oracle") {
        std::vector<MassFunction> ms;
        switch (file.kind) {
            case io::EvidenceKind::general:
                ms = file.general;
                break;
            case io::EvidenceKind::triplet:
                for (const TripletMass& t : file.triplets) ms.push_back(to_general(t));
                break;
            case io::EvidenceKind::dichotomous:
                for (const DichotomousMass& d : file.dichotomous)
                    ms.push_back(to_general(d));
                break;
        }
        result = io::to_json(general_fold(std::move(ms), trail));
    } else if (method == "triplet") {
        if (file.kind != io::EvidenceKind::triplet) reject_method(method, file);
        result = io::to_json(triplet_fold_with_trail(file.triplets, trail));
    } else if (method == "approx") {
        if (file.kind != io::EvidenceKind::triplet) reject_method(method, file);
        result = io::to_json(approx_combine(file.triplets, lambda));
    } else if (method == "dichotomous") {
        if (file.kind != io::EvidenceKind::dichotomous) reject_method(method, file);
        // Chains sharing one focus stay in (p, c, r) form; mixed focuses
        // combine per-focus first, then across pools via the general sum.
        std::map<std::size_t, std::vector<DichotomousMass>> pools;
        for (const DichotomousMass& d : file.dichotomous) {
            pools[d.focus()].push_back(d);
        }
        if (pools.size() == 1) {
            result = io::to_json(dichotomous_fold_with_trail(file.dichotomous, trail));
        } else {
            std::vector<MassFunction> pooled;
            for (const auto& [focus, chain] : pools) {
                pooled.push_back(to_general(dichotomous_fold_with_trail(chain, trail)));
            }
            result = io::to_json(general_fold(std::move(pooled), trail));
        }
    } else {
        throw Error("unknown combine method '" + method + "'");
    }

    emit(combine_output(method, trail, result), out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// fuse

int run_fuse(const std::string& scores_path, const std::string& labels_path,
             const std::string& method_name, double ignorance_floor,
             const std::string& out_path) {
    const auto method = fuse_method_from_string(method_name);
    if (!method) throw Error("unknown fuse method '" + method_name + "'");

    const ScoreMatrix matrix = io::read_score_csv(scores_path);
    FuseOptions options;
    options.method = *method;
    options.ignorance_floor = ignorance_floor;

    FusionReport report;
    if (labels_path.empty()) {
        report = fuse_matrix(matrix, options);
    } else {
        report = evaluate(matrix, io::read_labels_csv(labels_path), options);
    }
    emit(io::report_to_json(report, matrix.categories()), out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// bench

std::vector<std::size_t> parse_n_spec(const std::string& spec) {
    std::vector<std::size_t> out;
    std::size_t start = 0, stop = 0, step = 0;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(spec);
    if (spec.find(':') == std::string::npos) {
        if (!(in >> start) || !in.eof() || start == 0) {
            throw Error("bad --n value '" + spec + "' (want N or start:stop:step)");
        }
        out.push_back(start);
        return out;
    }
    if (!(in >> start >> colon1 >> stop >> colon2 >> step) || !in.eof() ||
        colon1 != ':' || colon2 != ':' || start == 0 || step == 0 || stop < start) {
        throw Error("bad --n range '" + spec + "' (want start:stop:step)");
    }
    for (std::size_t n = start; n <= stop; n += step) out.push_back(n);
    return out;
}

int run_bench(const std::string& method, const std::string& n_spec,
              std::size_t frame_size, const BenchOptions& options,
              const std::string& out_path) {
    std::vector<BenchRecord> records;
    for (std::size_t n : parse_n_spec(n_spec)) {
        if (method == "triplet") {
            records.push_back(bench_triplet_fold(n, frame_size, options));
        } else if (method == "dichotomous") {
            records.push_back(bench_dichotomous_repeated(n, frame_size, options));
        } else if (method == "oracle") {
            records.push_back(bench_oracle_combine(n, frame_size, options));
        } else {
            throw Error("unknown bench method '" + method + "'");
        }
    }
    std::ostringstream csv;
    write_bench_csv(csv, records);
    emit(csv.str(), out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// oracle-check

double max_focal_gap(const MassFunction& a, const MassFunction& b) {
    double worst = 0.0;
    for (const auto& [bits, mass] : a.focal()) {
        worst = std::max(worst, std::abs(mass - b.mass_bits(bits)));
    }
    for (const auto& [bits, mass] : b.focal()) {
        worst = std::max(worst, std::abs(mass - a.mass_bits(bits)));
    }
    return worst;
}

int run_oracle_check(std::uint64_t seed, std::size_t trials, std::size_t frame_size) {
    if (frame_size < 3 || frame_size > 20) {
        throw Error("oracle-check needs --frame-size in [3, 20]");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < frame_size; ++i) {
        labels.push_back("h" + std::to_string(i));
    }
    const Frame frame = Frame::make(std::move(labels));
    Sampler sampler(seed);
    constexpr double tolerance = 1e-9;

    struct Case {
        const char* name;
        double worst = 0.0;
    };
    std::array<Case, 4> cases{{{"equal-focus pair"},
                               {"one-shared-focus pair"},
                               {"disjoint-focus pair"},
                               {"repeated-focus chain"}}};

    for (std::size_t trial = 0; trial < trials; ++trial) {
        {
            const auto [t1, t2] = sampler.triplet_pair(frame, 2);
            const MassFunction expect = combine_pair(to_general(t1), to_general(t2));
            cases[0].worst = std::max(
                cases[0].worst, max_focal_gap(to_general(combine_equal(t1, t2)), expect));
        }
        {
            const auto [t1, t2] = sampler.triplet_pair(frame, 1);
            const MassFunction expect = combine_pair(to_general(t1), to_general(t2));
            cases[1].worst = std::max(
                cases[1].worst,
                max_focal_gap(combine_one_shared(t1, t2).intermediate.to_general(),
                              expect));
        }
        if (frame_size >= 4) {
            const auto [t1, t2] = sampler.triplet_pair(frame, 0);
            const MassFunction expect = combine_pair(to_general(t1), to_general(t2));
            cases[2].worst = std::max(
                cases[2].worst,
                max_focal_gap(combine_disjoint(t1, t2).intermediate.to_general(),
                              expect));
        }
        {
            const std::size_t l = 2 + sampler.uniform_index(4);
            const std::size_t focus = sampler.uniform_index(frame_size);
            std::vector<DichotomousMass> ds;
            std::vector<MassFunction> ms;
            for (std::size_t i = 0; i < l; ++i) {
                ds.push_back(sampler.dichotomous(frame, focus));
                ms.push_back(to_general(ds.back()));
            }
            cases[3].worst = std::max(
                cases[3].worst,
                max_focal_gap(to_general(combine_repeated(ds)), combine_all(ms)));
        }
    }

    bool ok = true;
    for (const Case& c : cases) {
        const bool skipped = c.name == std::string("disjoint-focus pair") && frame_size < 4;
        if (skipped) {
            std::cout << c.name << ": skipped (frame too small)\n";
            continue;
        }
        const bool pass = c.worst <= tolerance;
        ok = ok && pass;
        std::cout << c.name << ": " << trials << " trials, max gap "
                  << io::format_number(c.worst) << (pass ? "" : " EXCEEDS TOLERANCE")
                  << "\n";
    }
    std::cout << (ok ? "OK" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evidence combination for frames of discernment: exact and "
                 "specialized orthogonal sums, classifier fusion, benchmarks"};
    app.require_subcommand(1);

    // combine
    std::string combine_input, combine_method = "auto", combine_out;
    double combine_lambda = 0.0;
    CLI::App* combine = app.add_subcommand(
        "combine", "Combine the evidence in a JSON file, reporting K^-1 per step");
    combine->add_option("input", combine_input, "Evidence JSON file")->required();
    combine->add_option("--method", combine_method,
                        "auto | triplet | dichotomous | oracle | approx")
        ->default_val("auto");
    combine->add_option("--lambda", combine_lambda,
                        "Additive constant of the approximate method")
        ->default_val(0.0);
    combine->add_option("--out", combine_out, "Write the result here instead of stdout");

    // fuse
    std::string fuse_scores, fuse_labels, fuse_method = "triplet", fuse_out;
    double fuse_floor = 0.1;
    CLI::App* fuse = app.add_subcommand(
        "fuse", "Fuse per-classifier score vectors into one decision per item");
    fuse->add_option("scores", fuse_scores, "Score matrix CSV")->required();
    fuse->add_option("--labels", fuse_labels, "Ground-truth CSV for accuracy");
    fuse->add_option("--method", fuse_method, "triplet | dichotomous | oracle")
        ->default_val("triplet");
    fuse->add_option("--ignorance-floor", fuse_floor,
                     "Ignorance kept by the dichotomous mapping")
        ->default_val(0.1);
    fuse->add_option("--out", fuse_out, "Write the report here instead of stdout");

    // bench
    std::string bench_method = "triplet", bench_n = "1000", bench_out;
    std::size_t bench_frame_size = 8;
    BenchOptions bench_options;
    CLI::App* bench = app.add_subcommand(
        "bench", "Time a combination method over growing input counts (CSV)");
    bench->add_option("--method", bench_method, "triplet | dichotomous | oracle")
        ->default_val("triplet");
    bench->add_option("--n", bench_n, "Input count: N or start:stop:step")
        ->default_val("1000");
    bench->add_option("--frame-size", bench_frame_size, "Labels in the frame")
        ->default_val(8);
    bench->add_option("--seed", bench_options.seed, "Generator seed")->default_val(0);
    bench->add_option("--reps", bench_options.reps, "Timed repetitions")
        ->default_val(5);
    bench->add_option("--warmup", bench_options.warmup, "Untimed warm-up runs")
        ->default_val(3);
    bench->add_option("--out", bench_out, "Write the CSV here instead of stdout");

    // oracle-check
    std::uint64_t check_seed = 0;
    std::size_t check_trials = 200, check_frame_size = 6;
    CLI::App* check = app.add_subcommand(
        "oracle-check",
        "Compare the specialized combinations against the general orthogonal sum");
    check->add_option("--seed", check_seed, "Generator seed")->default_val(0);
    check->add_option("--n", check_trials, "Random trials per case")->default_val(200);
    check->add_option("--frame-size", check_frame_size, "Labels in the frame")
        ->default_val(6);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (combine->parsed()) {
            return run_combine(combine_input, combine_method, combine_lambda,
                               combine_out);
        }
        if (fuse->parsed()) {
            return run_fuse(fuse_scores, fuse_labels, fuse_method, fuse_floor,
                            fuse_out);
        }
        if (bench->parsed()) {
            return run_bench(bench_method, bench_n, bench_frame_size, bench_options,
                             bench_out);
        }
        if (check->parsed()) {
            return run_oracle_check(check_seed, check_trials, check_frame_size);
        }
    } catch (const TotalConflictError& e) {
        std::cerr << "evicomb: " << e.what() << "\n";
        return 3;
    } catch (const ApproxBreakdownError& e) {
        std::cerr << "evicomb: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "evicomb: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "evicomb: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "evicomb/fusion.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <utility>

#include "evicomb/sampling.hpp"

namespace evicomb {

const char* to_string(FuseMethod m) noexcept {
    switch (m) {
        case FuseMethod::triplet: return "triplet";
        case FuseMethod::dichotomous: return "dichotomous";
        case FuseMethod::oracle: return "oracle";
    }
    return "?";
}

std::optional<FuseMethod> fuse_method_from_string(const std::string& s) noexcept {
    if (s == "triplet") return FuseMethod::triplet;
    if (s == "dichotomous") return FuseMethod::dichotomous;
    if (s == "oracle") return FuseMethod::oracle;
    return std::nullopt;
}

std::optional<NoiseModel> noise_model_from_string(const std::string& s) noexcept {
    if (s == "flat") return NoiseModel::flat;
    if (s == "exponential") return NoiseModel::exponential;
    return std::nullopt;
}

ScoreMatrix ScoreMatrix::make(Frame categories, std::vector<Item> items) {
    if (categories.size() < 2) {
        throw MassError("score matrix needs at least two categories");
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        const Item& item = items[i];
        if (item.id.empty()) {
            throw MassError("score matrix item " + std::to_string(i) + " has an empty id");
        }
        if (item.scores.empty()) {
            throw MassError("score matrix item '" + item.id + "' has no classifiers");
        }
        if (item.scores.size() != items[0].scores.size()) {
            throw MassError("score matrix item '" + item.id +
                            "' disagrees on the classifier count");
        }
        for (std::size_t c = 0; c < item.scores.size(); ++c) {
            const auto& [classifier, scores] = item.scores[c];
            if (classifier != items[0].scores[c].first) {
                throw MassError("score matrix item '" + item.id +
                                "' lists classifier '" + classifier +
                                "' out of the shared order");
            }
            if (scores.size() != categories.size()) {
                std::ostringstream msg;
                msg << "score matrix item '" << item.id << "', classifier '"
                    << classifier << "': " << scores.size() << " scores for "
                    << categories.size() << " categories";
                throw MassError(msg.str());
            }
            for (double s : scores) {
                if (!(s >= 0.0)) {
                    throw MassError("score matrix item '" + item.id +
                                    "', classifier '" + classifier +
                                    "' carries a negative score");
                }
            }
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (items[j].id == item.id) {
                throw MassError("score matrix repeats item id '" + item.id + "'");
            }
        }
    }
    return ScoreMatrix(std::move(categories), std::move(items));
}

std::vector<std::string> ScoreMatrix::classifier_ids() const {
    std::vector<std::string> ids;
    if (items_.empty()) return ids;
    ids.reserve(items_[0].scores.size());
    for (const auto& [classifier, scores] : items_[0].scores) {
        ids.push_back(classifier);
    }
    return ids;
}

namespace {

std::vector<double> normalized_scores(std::span<const double> scores,
                                      const Frame& frame, const char* operation) {
    if (scores.size() != frame.size()) {
        std::ostringstream msg;
        msg << operation << ": " << scores.size() << " scores for a frame of "
            << frame.size() << " labels";
        throw MassError(msg.str());
    }
    double sum = 0.0;
    for (double s : scores) {
        if (!(s >= 0.0)) {
            throw MassError(std::string(operation) + ": negative score");
        }
        sum += s;
    }
    if (sum <= 0.0) {
        throw MassError(std::string(operation) + ": scores sum to zero");
    }
    std::vector<double> out(scores.begin(), scores.end());
    for (double& s : out) s /= sum;
    return out;
}

} // namespace

TripletMass scores_to_triplet(std::span<const double> scores, const Frame& frame) {
    return outstanding(frame, normalized_scores(scores, frame, "scores_to_triplet"));
}

DichotomousMass scores_to_dichotomous(std::span<const double> scores, const Frame& frame,
                                      double ignorance_floor) {
    if (!(ignorance_floor >= 0.0 && ignorance_floor <= 1.0)) {
        throw MassError("ignorance floor must lie in [0, 1]");
    }
    const std::vector<double> s =
        normalized_scores(scores, frame, "scores_to_dichotomous");
    std::size_t focus = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] > s[focus]) focus = i;
    }
    const double p = s[focus];
    const double c = (1.0 - p) * (1.0 - ignorance_floor);
    const double r = std::min(1.0, std::max(0.0, 1.0 - p - c));
    return DichotomousMass(frame, focus, p, c, r);
}

namespace {

/// Argmax of singleton beliefs, ties toward the lower index.
std::size_t decide(const MassFunction& m) {
    const Frame& frame = m.frame();
    std::size_t best = 0;
    double best_belief = belief(m, Subset::of_indices(frame, {0}));
    for (std::size_t i = 1; i < frame.size(); ++i) {
        const double b = belief(m, Subset::of_indices(frame, {i}));
        if (b > best_belief) {
            best = i;
            best_belief = b;
        }
    }
    return best;
}

/// Outstanding summary of a general combination result: the singleton
/// beliefs feed the outstanding rule, everything else pools into Theta.
TripletMass summarize(const MassFunction& m) {
    const Frame& frame = m.frame();
    std::vector<double> singles(frame.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        singles[i] = m.mass_bits(std::uint32_t{1} << i);
        sum += singles[i];
    }
    if (sum > 1.0) {
        // Normalization rounding can push the singleton total a hair over
        // one; scale it back so the outstanding rule's precondition holds.
        for (double& s : singles) s /= sum;
    }
    return outstanding(frame, singles);
}

ItemDecision undecided_item(std::string id, const TotalConflictError& e) {
    ItemDecision decision;
    decision.item = std::move(id);
    decision.undecided = true;
    decision.note = e.what();
    return decision;
}

} // namespace

ItemDecision fuse_item(const std::string& item_id,
                       const std::vector<std::pair<std::string, std::vector<double>>>& scores,
                       const Frame& frame, const FuseOptions& options,
                       std::uint64_t* steps) {
    if (scores.empty()) {
        throw MassError("fuse_item: item '" + item_id + "' has no classifiers");
    }
    std::uint64_t local_steps = 0;
    ItemDecision decision;
    decision.item = item_id;

    try {
        switch (options.method) {
            case FuseMethod::triplet: {
                std::vector<TripletMass> ts;
                ts.reserve(scores.size());
                for (const auto& [classifier, s] : scores) {
                    ts.push_back(scores_to_triplet(s, frame));
                }
                // Canonical presentation: strongest leading mass first, so the
                // fused result does not depend on classifier column order.
                // Seeding the running pair with the heaviest channels also
                // loses the least eventually-winning mass to the per-step
                // refocus (measured against the exact orthogonal sum).
                std::stable_sort(ts.begin(), ts.end(),
                                 [](const TripletMass& a, const TripletMass& b) {
                                     return a.m1() > b.m1();
                                 });
                TripletMass combined = fold_combine(ts);
                local_steps += ts.size() - 1;
                decision.category = decide(to_general(combined));
                decision.combined = std::move(combined);
                break;
            }
            case FuseMethod::dichotomous: {
                // Pool by focus: within a pool the chain combines linearly,
                // across pools the general orthogonal sum takes over.
                std::map<std::size_t, std::vector<DichotomousMass>> pools;
                for (const auto& [classifier, s] : scores) {
                    DichotomousMass d =
                        scores_to_dichotomous(s, frame, options.ignorance_floor);
                    pools[d.focus()].push_back(std::move(d));
                }
                std::vector<MassFunction> pooled;
                pooled.reserve(pools.size());
                for (const auto& [focus, chain] : pools) {
                    pooled.push_back(to_general(combine_repeated(chain)));
                    local_steps += chain.size() - 1;
                }
                MassFunction combined = combine_all(pooled);
                local_steps += pooled.size() - 1;
                decision.category = decide(combined);
                decision.combined = summarize(combined);
                break;
            }
            case FuseMethod::oracle: {
                if (frame.size() > options.oracle_frame_cap) {
                    std::ostringstream msg;
                    msg << "oracle fusion refuses a frame of " << frame.size()
                        << " labels (cap " << options.oracle_frame_cap << ")";
                    throw FrameError(FrameError::Reason::too_many_labels, msg.str());
                }
                std::vector<MassFunction> ms;
                ms.reserve(scores.size());
                for (const auto& [classifier, s] : scores) {
                    ms.push_back(to_general(scores_to_triplet(s, frame)));
                }
                MassFunction combined = combine_all(ms);
                local_steps += ms.size() - 1;
                decision.category = decide(combined);
                decision.combined = summarize(combined);
                break;
            }
        }
    } catch (const TotalConflictError& e) {
        if (steps) *steps += local_steps;
        return undecided_item(item_id, e);
    }
    if (steps) *steps += local_steps;
    return decision;
}

namespace {

FusionReport run_fuse(const ScoreMatrix& matrix, const FuseOptions& options) {
    FusionReport report;
    report.method = options.method;
    report.decisions.reserve(matrix.items().size());

    const auto start = std::chrono::steady_clock::now();
    for (const auto& item : matrix.items()) {
        ItemDecision decision = fuse_item(item.id, item.scores, matrix.categories(),
                                          options, &report.combine_steps);
        if (decision.undecided) ++report.undecided;
        report.decisions.push_back(std::move(decision));
    }
    const auto stop = std::chrono::steady_clock::now();
    report.wall_ns = static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
    return report;
}

} // namespace

FusionReport fuse_matrix(const ScoreMatrix& matrix, const FuseOptions& options) {
    return run_fuse(matrix, options);
}

FusionReport evaluate(const ScoreMatrix& matrix,
                      const std::map<std::string, std::string>& labels,
                      const FuseOptions& options) {
    const Frame& frame = matrix.categories();

    // Resolve every label up front so a bad labels file fails fast.
    std::vector<std::size_t> truth;
    truth.reserve(matrix.items().size());
    for (const auto& item : matrix.items()) {
        const auto it = labels.find(item.id);
        if (it == labels.end()) {
            throw MassError("evaluate: item '" + item.id + "' has no label");
        }
        truth.push_back(frame.index_of(it->second));
    }

    FusionReport report = run_fuse(matrix, options);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < report.decisions.size(); ++i) {
        const ItemDecision& d = report.decisions[i];
        if (!d.undecided && d.category == truth[i]) ++correct;
    }
    report.accuracy = matrix.items().empty()
                          ? 0.0
                          : static_cast<double>(correct) /
                                static_cast<double>(matrix.items().size());

    for (const std::string& classifier : matrix.classifier_ids()) {
        report.individual_accuracy.emplace_back(classifier, 0.0);
    }
    for (std::size_t i = 0; i < matrix.items().size(); ++i) {
        const auto& item = matrix.items()[i];
        for (std::size_t c = 0; c < item.scores.size(); ++c) {
            const std::vector<double>& s = item.scores[c].second;
            std::size_t top = 0;
            for (std::size_t k = 1; k < s.size(); ++k) {
                if (s[k] > s[top]) top = k;
            }
            if (top == truth[i]) report.individual_accuracy[c].second += 1.0;
        }
    }
    if (!matrix.items().empty()) {
        for (auto& [classifier, acc] : report.individual_accuracy) {
            acc /= static_cast<double>(matrix.items().size());
        }
    }
    return report;
}

SynthWorkload synth_workload(const SynthParams& params) {
    if (params.categories < 2) {
        throw MassError("synthetic workload needs at least two categories");
    }
    if (params.categories > Frame::max_size) {
        throw MassError("synthetic workload categories exceed the frame limit");
    }
    if (params.items == 0 || params.classifiers == 0) {
        throw MassError("synthetic workload needs at least one item and one classifier");
    }
    const double chance = 1.0 / static_cast<double>(params.categories);
    if (!(params.accuracy > chance && params.accuracy <= 1.0)) {
        std::ostringstream msg;
        msg << "synthetic accuracy " << params.accuracy
            << " must exceed chance (" << chance << ") and stay at most 1";
        throw MassError(msg.str());
    }

    std::vector<std::string> categories;
    categories.reserve(params.categories);
    for (std::size_t i = 0; i < params.categories; ++i) {
        categories.push_back("c" + std::to_string(i));
    }
    Frame frame = Frame::make(categories);

    Sampler sampler(params.seed);
    // Noise scores stay strictly under the winner's 1.0 and strictly above
    // zero, so the top score is unambiguous and every score is positive.
    auto noise_score = [&]() {
        switch (params.noise) {
            case NoiseModel::flat:
                return sampler.uniform(0.01, 0.6);
            case NoiseModel::exponential:
                return 0.01 + std::min(
                                  0.59, std::exponential_distribution<double>(
                                            1.0 / 0.12)(sampler.rng()));
        }
        return 0.0;
    };

    std::vector<ScoreMatrix::Item> items;
    items.reserve(params.items);
    std::map<std::string, std::string> labels;
    for (std::size_t i = 0; i < params.items; ++i) {
        ScoreMatrix::Item item;
        item.id = "item" + std::to_string(i);
        const std::size_t truth = sampler.uniform_index(params.categories);
        labels[item.id] = frame.label(truth);

        for (std::size_t c = 0; c < params.classifiers; ++c) {
            std::size_t winner = truth;
            if (sampler.uniform(0.0, 1.0) >= params.accuracy) {
                winner = sampler.uniform_index(params.categories - 1);
                if (winner >= truth) ++winner;
            }
            std::vector<double> scores(params.categories);
            for (std::size_t k = 0; k < params.categories; ++k) {
                scores[k] = k == winner ? 1.0 : noise_score();
            }
            item.scores.emplace_back("clf" + std::to_string(c), std::move(scores));
        }
        items.push_back(std::move(item));
    }
    return SynthWorkload{ScoreMatrix::make(std::move(frame), std::move(items)),
                         std::move(labels)};
}

} // namespace evicomb

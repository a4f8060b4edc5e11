#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evicomb/dichotomous.hpp"
#include "evicomb/triplet.hpp"

namespace evicomb {

/// How per-classifier score vectors are turned into evidence and combined.
///   triplet     — outstanding-rule triplets, linear fold with refocusing
///   dichotomous — (p, c, r) structures, linear per-focus pools, exact
///                 combination across pools
///   oracle      — triplet-shaped evidence combined exactly with the
///                 general orthogonal sum (no refocus loss)
enum class FuseMethod { triplet, dichotomous, oracle };

const char* to_string(FuseMethod m) noexcept;
std::optional<FuseMethod> fuse_method_from_string(const std::string& s) noexcept;

/// Per-item, per-classifier scores over the categories of one frame.
/// Every item carries the same classifiers, every vector one score per
/// category, all scores non-negative.
class ScoreMatrix {
public:
    struct Item {
        std::string id;
        /// (classifier id, scores) in a fixed order shared by all items.
        std::vector<std::pair<std::string, std::vector<double>>> scores;
    };

    static ScoreMatrix make(Frame categories, std::vector<Item> items);

    const Frame& categories() const noexcept { return categories_; }
    const std::vector<Item>& items() const noexcept { return items_; }
    /// Classifier ids in their shared order; empty for an empty matrix.
    std::vector<std::string> classifier_ids() const;

private:
    ScoreMatrix(Frame categories, std::vector<Item> items)
        : categories_(std::move(categories)), items_(std::move(items)) {}

    Frame categories_;
    std::vector<Item> items_;
};

/// Normalizes the scores to sum one and applies the outstanding rule:
/// the two best categories become the focuses, the rest pools into Theta.
TripletMass scores_to_triplet(std::span<const double> scores, const Frame& frame);

/// Maps scores to a (p, c, r) structure: p is the top normalized score and
/// the refuting mass is discounted by `ignorance_floor` so r stays positive
/// and chains remain combinable:
///   c = (1 - p) * (1 - ignorance_floor),  r = 1 - p - c.
DichotomousMass scores_to_dichotomous(std::span<const double> scores, const Frame& frame,
                                      double ignorance_floor = 0.1);

struct FuseOptions {
    FuseMethod method = FuseMethod::triplet;
    double ignorance_floor = 0.1;
    /// The oracle method refuses frames larger than this (powerset blowup).
    std::size_t oracle_frame_cap = 16;
};

struct ItemDecision {
    std::string item;
    bool undecided = false;
    /// Chosen category index; meaningful only when decided.
    std::size_t category = 0;
    /// Outstanding summary of the combined evidence (absent when undecided).
    std::optional<TripletMass> combined;
    /// Failure note for undecided items.
    std::string note;
};

/// Builds evidence from each classifier's scores, combines it per the
/// selected method, and decides by maximum singleton belief (ties toward
/// the lower index). A totally conflicting chain marks the item undecided
/// instead of throwing. `steps`, when given, accumulates the number of
/// pairwise combination steps performed (a deterministic cost measure).
ItemDecision fuse_item(const std::string& item_id,
                       const std::vector<std::pair<std::string, std::vector<double>>>& scores,
                       const Frame& frame, const FuseOptions& options,
                       std::uint64_t* steps = nullptr);

struct FusionReport {
    FuseMethod method = FuseMethod::triplet;
    std::vector<ItemDecision> decisions;
    std::size_t undecided = 0;
    /// Fraction of items whose decision matches the supplied label;
    /// undecided items count as incorrect. Absent without labels.
    std::optional<double> accuracy;
    /// (classifier id, argmax accuracy) in classifier order; present only
    /// when labels were supplied.
    std::vector<std::pair<std::string, double>> individual_accuracy;
    /// Pairwise combination steps across all items (deterministic).
    std::uint64_t combine_steps = 0;
    /// Wall time of the fuse phase. Excluded from determinism guarantees.
    double wall_ns = 0.0;
};

/// Decisions only; no labels, no accuracy section.
FusionReport fuse_matrix(const ScoreMatrix& matrix, const FuseOptions& options);

/// Full evaluation against ground-truth labels (item id -> category label).
/// Every item must be labeled with a category of the matrix's frame.
FusionReport evaluate(const ScoreMatrix& matrix,
                      const std::map<std::string, std::string>& labels,
                      const FuseOptions& options);

/// Shape of the per-category noise under the winning score.
enum class NoiseModel { flat, exponential };

std::optional<NoiseModel> noise_model_from_string(const std::string& s) noexcept;

struct SynthParams {
    std::size_t categories = 10;
    std::size_t items = 100;
    std::size_t classifiers = 5;
    /// Probability that a classifier's top score lands on the true label.
    /// Must exceed chance (1/categories).
    double accuracy = 0.7;
    NoiseModel noise = NoiseModel::flat;
    std::uint64_t seed = 0;
};

struct SynthWorkload {
    ScoreMatrix matrix;
    std::map<std::string, std::string> labels;
};

/// Seeded synthetic classifier ensemble: each classifier independently puts
/// its strict top score on the true label with the requested probability,
/// and on a uniformly random wrong label otherwise. All scores are strictly
/// positive; identical seeds reproduce identical workloads.
SynthWorkload synth_workload(const SynthParams& params);

} // namespace evicomb

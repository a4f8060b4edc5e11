#pragma once

#include <span>
#include <utility>
#include <vector>

#include "evicomb/mass.hpp"

namespace evicomb {

/// Evidence focused on the two strongest singletons, with everything else
/// pooled on Theta. a1 always carries the larger of the two singleton
/// masses; ties order by frame index.
class TripletMass {
public:
    /// Requires distinct valid singleton indices on a frame of size >= 2,
    /// masses in [0, 1] with m1 >= m2 and m1 + m2 + mt = 1 within
    /// tol::mass_sum.
    TripletMass(Frame frame, std::size_t a1, std::size_t a2,
                double m1, double m2, double mt);

    /// Total ignorance. The singleton slots are kept for provenance but
    /// carry no evidence.
    static TripletMass vacuous(Frame frame, std::size_t a1, std::size_t a2) {
        return TripletMass(std::move(frame), a1, a2, 0.0, 0.0, 1.0);
    }

    const Frame& frame() const noexcept { return frame_; }
    std::size_t a1() const noexcept { return a1_; }
    std::size_t a2() const noexcept { return a2_; }
    double m1() const noexcept { return m1_; }
    double m2() const noexcept { return m2_; }
    double mt() const noexcept { return mt_; }

    /// Mass this triplet puts on the singleton `index` (0 off-focus).
    double singleton_mass(std::size_t index) const noexcept {
        if (index == a1_) return m1_;
        if (index == a2_) return m2_;
        return 0.0;
    }

    bool focuses_on(std::size_t index) const noexcept {
        return index == a1_ || index == a2_;
    }

private:
    Frame frame_;
    std::size_t a1_, a2_;
    double m1_, m2_, mt_;
};

/// Pairwise combination result before refocusing: up to four singleton
/// focuses plus Theta. This is exactly the orthogonal sum of the operands;
/// the refocused triplet derived from it is a lossy summary.
class MultiFocusIntermediate {
public:
    /// (singleton index, mass) entries in ascending index order, plus the
    /// Theta mass. Zero-mass entries are permitted; they mark candidate
    /// focuses that received no support.
    MultiFocusIntermediate(Frame frame,
                           std::vector<std::pair<std::size_t, double>> singletons,
                           double theta);

    const Frame& frame() const noexcept { return frame_; }
    const std::vector<std::pair<std::size_t, double>>& singletons() const noexcept {
        return singletons_;
    }
    double theta() const noexcept { return theta_; }
    double singleton_mass(std::size_t index) const noexcept;

    /// Sparse general view; zero entries dropped.
    MassFunction to_general() const;

    /// Outstanding refocus: the top two singleton masses survive, the rest
    /// pools into Theta. Ties order by frame index.
    TripletMass refocus() const;

private:
    Frame frame_;
    std::vector<std::pair<std::size_t, double>> singletons_;
    double theta_;
};

/// Refocused triplet together with the exact pre-refocus combination.
struct TripletCombination {
    TripletMass refocused;
    MultiFocusIntermediate intermediate;
};

/// The outstanding rule: given one mass per singleton (summing to at most
/// one), keep the two largest as the triplet's focuses and pool the rest
/// into Theta. Ties break toward the lower frame index.
TripletMass outstanding(const Frame& frame, std::span<const double> singleton_masses);

/// Combination when both triplets focus on the same two singletons.
/// Crossed roles (t1's first focus equal to t2's second) are aligned before
/// the masses are combined. The result keeps the same two focuses, reordered
/// if the runner-up overtakes.
TripletMass combine_equal(const TripletMass& t1, const TripletMass& t2);

/// Combination when the focus pairs share exactly one singleton. The shared
/// singleton is canonicalized into the x role regardless of the position it
/// occupies in either operand. The intermediate carries the three candidate
/// singletons; the refocused triplet discards the weakest into Theta.
TripletCombination combine_one_shared(const TripletMass& t1, const TripletMass& t2);

/// Combination when the four focus singletons are pairwise distinct. The
/// intermediate carries all four candidates plus Theta.
TripletCombination combine_disjoint(const TripletMass& t1, const TripletMass& t2);

/// Dispatches on the overlap of the two focus pairs (2, 1, or 0 shared
/// singletons) and returns the refocused triplet. Total-conflict errors
/// carry the detected case.
TripletMass combine_pair_auto(const TripletMass& t1, const TripletMass& t2);

/// Left fold of combine_pair_auto, refocusing after every step. Sequential
/// by definition: refocusing makes the fold order-sensitive. A failure
/// carries the index of the triplet that could not be folded in.
TripletMass fold_combine(std::span<const TripletMass> ts);

/// Approximate multi-way combination for chains sharing the first focus x
/// with pairwise-distinct second focuses. Linear in the chain length; the
/// surviving second focus is the first input's. `lambda` is the additive
/// constant of the approximation (default 0). Masses that leave [0, 1]
/// raise ApproxBreakdownError rather than being clamped.
TripletMass approx_combine(std::span<const TripletMass> ts, double lambda = 0.0);

/// Bridge to the general representation; zero entries omitted.
MassFunction to_general(const TripletMass& t);

} // namespace evicomb

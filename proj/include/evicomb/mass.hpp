#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "evicomb/frame.hpp"

namespace evicomb {

/// General basic probability assignment over subsets of a frame.
///
/// Storage is sparse: only strictly positive masses are kept, the empty set
/// is never stored, and the stored masses sum to one within tol::mass_sum.
/// This type is the currency of the brute-force orthogonal-sum oracle; the
/// dichotomous and triplet fast paths are validated against it.
class MassFunction {
public:
    using FocalMap = std::map<std::uint32_t, double>;

    /// Builds a mass function from a subset->mass map. Zero entries are
    /// dropped; negative masses, empty-set mass, and a bad total are errors.
    static MassFunction from_focal(Frame frame, FocalMap focal);

    /// Total ignorance: all mass on Theta. Neutral element of the
    /// orthogonal sum.
    static MassFunction vacuous(Frame frame);

    const Frame& frame() const noexcept { return frame_; }
    const FocalMap& focal() const noexcept { return focal_; }
    std::size_t focal_count() const noexcept { return focal_.size(); }

    double mass_bits(std::uint32_t bits) const noexcept {
        auto it = focal_.find(bits);
        return it == focal_.end() ? 0.0 : it->second;
    }
    double mass(const Subset& a) const;

private:
    MassFunction(Frame frame, FocalMap focal)
        : frame_(std::move(frame)), focal_(std::move(focal)) {}

    Frame frame_;
    FocalMap focal_;
};

/// Total mass the product measure puts on disjoint focal pairs,
/// sum over X, Y with X intersect Y empty of m1(X) m2(Y). In [0, 1];
/// equals 1 exactly when the operands are totally conflicting.
double conflict(const MassFunction& m1, const MassFunction& m2);

/// Dempster's orthogonal sum of two mass functions. Throws
/// TotalConflictError when K^-1 vanishes (conflict >= 1 - tol).
MassFunction combine_pair(const MassFunction& m1, const MassFunction& m2);

/// Left fold of combine_pair. A single input is returned unchanged. A
/// total-conflict failure carries the index of the input that failed to
/// fold in.
MassFunction combine_all(std::span<const MassFunction> ms);

/// bel(A) = sum of m(B) over non-empty B inside A.
double belief(const MassFunction& m, const Subset& a);

/// pl(A) = sum of m(B) over B meeting A. Dual of belief:
/// pl(A) = 1 - bel(Theta - A).
double plausibility(const MassFunction& m, const Subset& a);

/// q(A) = sum of m(B) over B containing A.
double commonality(const MassFunction& m, const Subset& a);

/// dou(A) = bel(Theta - A).
double doubt(const MassFunction& m, const Subset& a);

} // namespace evicomb

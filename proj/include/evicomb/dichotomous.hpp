#pragma once

#include <span>

#include "evicomb/mass.hpp"

namespace evicomb {

/// Mass function whose only focuses are {x}, Theta - {x}, and Theta,
/// summarized by the classic (p, c, r) structure:
///   p — support for the focus {x},
///   c — support for its refutation Theta - {x},
///   r — support committed to neither.
class DichotomousMass {
public:
    /// Requires a frame of size >= 2, a valid focus index, p, c, r in [0, 1]
    /// and p + c + r = 1 within tol::mass_sum.
    DichotomousMass(Frame frame, std::size_t focus, double p, double c, double r);

    /// Total ignorance with the given focus: r = 1.
    static DichotomousMass vacuous(Frame frame, std::size_t focus) {
        return DichotomousMass(std::move(frame), focus, 0.0, 0.0, 1.0);
    }

    const Frame& frame() const noexcept { return frame_; }
    std::size_t focus() const noexcept { return focus_; }
    double p() const noexcept { return p_; }
    double c() const noexcept { return c_; }
    double r() const noexcept { return r_; }

    /// d = 1 - p = c + r, the support not committed to the focus.
    double d() const noexcept { return c_ + r_; }

private:
    Frame frame_;
    std::size_t focus_;
    double p_, c_, r_;
};

/// Bridge to the general representation: focal elements {x}, Theta - {x},
/// Theta carrying p, c, r, zero entries omitted. At frame size 2 the
/// complement of the focus collapses to the other singleton.
MassFunction to_general(const DichotomousMass& d);

/// K^-1 of an l-way chain sharing one focus, evaluated with two running
/// suffix products in O(l). Equals 1 for a single function. The closed-form
/// special cases hold as consequences: when some p_i = 1 the value is the
/// product of (1 - c_j) over the others, and when some c_i = 1 it is the
/// product of d_j over the others.
double normalization_repeated(std::span<const DichotomousMass> ds);

/// Orthogonal sum of same-focus dichotomous mass functions. The result is
/// again dichotomous with the same focus. Linear in the chain length; throws
/// TotalConflictError when K^-1 falls to zero.
DichotomousMass combine_repeated(std::span<const DichotomousMass> ds);

} // namespace evicomb

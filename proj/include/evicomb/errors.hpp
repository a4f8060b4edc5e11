#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evicomb {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Frame construction or label lookup rejected.
class FrameError : public Error {
public:
    enum class Reason { empty_labels, duplicate_label, too_many_labels, unknown_label };

    FrameError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// A mass assignment violates an invariant: negative mass, masses not
/// summing to one, invalid focus index, and the like.
class MassError : public Error {
public:
    using Error::Error;
};

/// Two values built on different frames were mixed. Frames compare by
/// identity, never by label equality.
class FrameMismatchError : public Error {
public:
    using Error::Error;
};

/// K^-1 = 0: the operands place all joint mass on disjoint subsets and the
/// orthogonal sum does not exist.
class TotalConflictError : public Error {
public:
    static constexpr std::size_t no_step = static_cast<std::size_t>(-1);

    explicit TotalConflictError(const std::string& what,
                                std::size_t step = no_step,
                                std::string context = {})
        : Error(what), step_(step), context_(std::move(context)) {}

    /// Index of the input whose fold step failed; `no_step` for a plain pair.
    std::size_t step() const noexcept { return step_; }

    /// Extra detail, e.g. the overlap case a triplet combination detected.
    const std::string& context() const noexcept { return context_; }

private:
    std::size_t step_;
    std::string context_;
};

/// The approximate multi-way combination produced a mass outside [0, 1].
/// Reported instead of clamped so callers can fall back to the exact fold.
class ApproxBreakdownError : public Error {
public:
    using Error::Error;
};

namespace tol {

/// Mass functions must sum to one within this.
inline constexpr double mass_sum = 1e-9;

/// K^-1 at or below this is treated as total conflict.
inline constexpr double total_conflict = 1e-12;

/// Combination results below this are dropped and the rest renormalized.
inline constexpr double focal_dust = 1e-15;

} // namespace tol

} // namespace evicomb

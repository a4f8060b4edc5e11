#include "evicomb/mass.hpp"

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

namespace evicomb {

namespace {

[[noreturn]] void throw_bad_sum(double sum) {
    std::ostringstream msg;
    msg << "focal masses sum to " << sum << ", expected 1";
    throw MassError(msg.str());
}

} // namespace

MassFunction MassFunction::from_focal(Frame frame, FocalMap focal) {
    const std::uint32_t full = frame.full_mask();
    double sum = 0.0;
    for (auto it = focal.begin(); it != focal.end();) {
        auto [bits, mass] = *it;
        if (bits == 0 && mass != 0.0) {
            throw MassError("the empty set cannot carry mass");
        }
        if (bits & ~full) {
            throw MassError("focal element uses indices outside its frame");
        }
        if (mass < 0.0) {
            throw MassError("negative focal mass");
        }
        if (mass == 0.0) {
            it = focal.erase(it);
            continue;
        }
        sum += mass;
        ++it;
    }
    if (std::abs(sum - 1.0) > tol::mass_sum) throw_bad_sum(sum);
    return MassFunction(std::move(frame), std::move(focal));
}

MassFunction MassFunction::vacuous(Frame frame) {
    FocalMap focal;
    focal.emplace(frame.full_mask(), 1.0);
    return MassFunction(std::move(frame), std::move(focal));
}

double MassFunction::mass(const Subset& a) const {
    require_same_frame(frame_, a.frame(), "mass");
    return mass_bits(a.bits());
}

double conflict(const MassFunction& m1, const MassFunction& m2) {
    require_same_frame(m1.frame(), m2.frame(), "conflict");
    double sum = 0.0;
    for (const auto& [x, mx] : m1.focal()) {
        for (const auto& [y, my] : m2.focal()) {
            if ((x & y) == 0) sum += mx * my;
        }
    }
    return sum;
}

namespace {

/// Accumulates the product measure over intersections. A dense scratch
/// table pays off once the focal product outweighs the powerset sweep;
/// tiny focal sets stay on the sparse path.
MassFunction::FocalMap combine_accumulate(const MassFunction& m1, const MassFunction& m2,
                                          double& conflict_out) {
    const std::size_t fsize = m1.frame().size();
    const std::size_t products = m1.focal_count() * m2.focal_count();
    const bool dense = fsize <= 22 && products >= (std::size_t{1} << fsize) / 4;

    MassFunction::FocalMap acc;
    double conflict_mass = 0.0;
    if (dense) {
        std::vector<std::pair<std::uint32_t, double>> f1(m1.focal().begin(), m1.focal().end());
        std::vector<std::pair<std::uint32_t, double>> f2(m2.focal().begin(), m2.focal().end());
        std::vector<double> table(std::size_t{1} << fsize, 0.0);
        for (const auto& [x, mx] : f1) {
            for (const auto& [y, my] : f2) {
                table[x & y] += mx * my;
            }
        }
        conflict_mass = table[0];
        for (std::uint32_t bits = 1; bits < table.size(); ++bits) {
            if (table[bits] != 0.0) acc.emplace_hint(acc.end(), bits, table[bits]);
        }
    } else {
        for (const auto& [x, mx] : m1.focal()) {
            for (const auto& [y, my] : m2.focal()) {
                const std::uint32_t z = x & y;
                const double product = mx * my;
                if (z == 0) {
                    conflict_mass += product;
                } else {
                    acc[z] += product;
                }
            }
        }
    }
    conflict_out = conflict_mass;
    return acc;
}

} // namespace

MassFunction combine_pair(const MassFunction& m1, const MassFunction& m2) {
    require_same_frame(m1.frame(), m2.frame(), "combine_pair");

    double conflict_mass = 0.0;
    MassFunction::FocalMap acc = combine_accumulate(m1, m2, conflict_mass);

    const double k_inverse = 1.0 - conflict_mass;
    if (k_inverse <= tol::total_conflict) {
        throw TotalConflictError("total conflict: the orthogonal sum does not exist");
    }

    // Normalize, drop rounding dust, renormalize the remainder.
    double kept = 0.0;
    for (auto it = acc.begin(); it != acc.end();) {
        it->second /= k_inverse;
        if (it->second < tol::focal_dust) {
            it = acc.erase(it);
        } else {
            kept += it->second;
            ++it;
        }
    }
    if (kept <= 0.0) {
        throw TotalConflictError("total conflict: no focal mass survived");
    }
    for (auto& [bits, mass] : acc) mass /= kept;

    return MassFunction::from_focal(m1.frame(), std::move(acc));
}

MassFunction combine_all(std::span<const MassFunction> ms) {
    if (ms.empty()) throw MassError("combine_all needs at least one mass function");
    MassFunction acc = ms[0];
    for (std::size_t i = 1; i < ms.size(); ++i) {
        require_same_frame(acc.frame(), ms[i].frame(), "combine_all");
        try {
            acc = combine_pair(acc, ms[i]);
        } catch (const TotalConflictError& e) {
            std::ostringstream msg;
            msg << e.what() << " (fold step " << i << ")";
            throw TotalConflictError(msg.str(), i, e.context());
        }
    }
    return acc;
}

double belief(const MassFunction& m, const Subset& a) {
    require_same_frame(m.frame(), a.frame(), "belief");
    const std::uint32_t bits = a.bits();
    double sum = 0.0;
    for (const auto& [b, mass] : m.focal()) {
        if ((b & bits) == b) sum += mass;
    }
    return sum;
}

double plausibility(const MassFunction& m, const Subset& a) {
    require_same_frame(m.frame(), a.frame(), "plausibility");
    const std::uint32_t bits = a.bits();
    double sum = 0.0;
    for (const auto& [b, mass] : m.focal()) {
        if ((b & bits) != 0) sum += mass;
    }
    return sum;
}

double commonality(const MassFunction& m, const Subset& a) {
    require_same_frame(m.frame(), a.frame(), "commonality");
    const std::uint32_t bits = a.bits();
    double sum = 0.0;
    for (const auto& [b, mass] : m.focal()) {
        if ((b & bits) == bits) sum += mass;
    }
    return sum;
}

double doubt(const MassFunction& m, const Subset& a) {
    require_same_frame(m.frame(), a.frame(), "doubt");
    return belief(m, a.complement());
}

} // namespace evicomb

#pragma once

#include <cstdint>
#include <random>

#include "evicomb/dichotomous.hpp"
#include "evicomb/triplet.hpp"

namespace evicomb {

/// Seeded generator for random evidence. Used by the benchmark harness, the
/// oracle-check command, and the property tests; deterministic for a fixed
/// seed within one build.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() noexcept { return rng_; }

    std::size_t uniform_index(std::size_t bound);
    double uniform(double lo, double hi);

    /// Symmetric-Dirichlet point on the k-simplex, strictly positive
    /// components almost surely.
    std::vector<double> simplex(std::size_t k);

    /// Random triplet: distinct focuses, Dirichlet masses. Ignorance is
    /// positive almost surely, so sampled triplets are pairwise combinable.
    TripletMass triplet(const Frame& frame);

    /// Random triplet on the given focus pair (whichever of the two ends up
    /// as a1 depends on the drawn masses).
    TripletMass triplet_on(const Frame& frame, std::size_t x, std::size_t y);

    /// Random same-frame pair with the requested overlap between the focus
    /// pairs: 2 (equal), 1 (one shared), 0 (disjoint; needs frame size >= 4).
    std::pair<TripletMass, TripletMass> triplet_pair(const Frame& frame, int shared);

    DichotomousMass dichotomous(const Frame& frame, std::size_t focus);

    /// Random general mass function supported on every non-empty subset.
    /// Guarded to frame size <= 20 (dense powerset generation).
    MassFunction mass_full_support(const Frame& frame);

private:
    std::mt19937_64 rng_;
};

} // namespace evicomb

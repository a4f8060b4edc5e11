#include "evicomb/sampling.hpp"

#include <utility>

namespace evicomb {

std::size_t Sampler::uniform_index(std::size_t bound) {
    if (bound == 0) {
        throw Error("uniform_index needs a positive bound");
    }
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
}

double Sampler::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

std::vector<double> Sampler::simplex(std::size_t k) {
    if (k == 0) {
        throw Error("simplex needs at least one component");
    }
    // Normalized unit exponentials give a flat Dirichlet over the simplex.
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> out(k);
    double sum = 0.0;
    for (double& v : out) {
        do {
            v = exp1(rng_);
        } while (v <= 0.0);
        sum += v;
    }
    for (double& v : out) v /= sum;
    return out;
}

TripletMass Sampler::triplet(const Frame& frame) {
    if (frame.size() < 2) {
        throw MassError("triplet sampling needs a frame of at least two labels");
    }
    const std::size_t x = uniform_index(frame.size());
    std::size_t y = uniform_index(frame.size() - 1);
    if (y >= x) ++y;
    return triplet_on(frame, x, y);
}

TripletMass Sampler::triplet_on(const Frame& frame, std::size_t x, std::size_t y) {
    const std::vector<double> m = simplex(3);
    const bool swap = (m[1] > m[0]) || (m[1] == m[0] && y < x);
    const std::size_t a1 = swap ? y : x;
    const std::size_t a2 = swap ? x : y;
    const double m1 = swap ? m[1] : m[0];
    const double m2 = swap ? m[0] : m[1];
    return TripletMass(frame, a1, a2, m1, m2, m[2]);
}

std::pair<TripletMass, TripletMass> Sampler::triplet_pair(const Frame& frame,
                                                          int shared) {
    if (shared < 0 || shared > 2) {
        throw Error("triplet_pair overlap must be 0, 1, or 2");
    }
    const std::size_t needed = shared == 2 ? 2 : (shared == 1 ? 3 : 4);
    if (frame.size() < needed) {
        throw MassError("triplet_pair: frame too small for the requested overlap");
    }
    // Draw the distinct singletons the pair needs, then deal them out.
    std::vector<std::size_t> picks;
    while (picks.size() < needed) {
        const std::size_t candidate = uniform_index(frame.size());
        bool seen = false;
        for (std::size_t p : picks) seen = seen || p == candidate;
        if (!seen) picks.push_back(candidate);
    }
    TripletMass first = triplet_on(frame, picks[0], picks[1]);
    TripletMass second =
        shared == 2 ? triplet_on(frame, picks[0], picks[1])
        : shared == 1 ? triplet_on(frame, picks[0], picks[2])
                      : triplet_on(frame, picks[2], picks[3]);
    return {std::move(first), std::move(second)};
}

DichotomousMass Sampler::dichotomous(const Frame& frame, std::size_t focus) {
    const std::vector<double> m = simplex(3);
    return DichotomousMass(frame, focus, m[0], m[1], m[2]);
}

MassFunction Sampler::mass_full_support(const Frame& frame) {
    if (frame.size() > 20) {
        throw FrameError(FrameError::Reason::too_many_labels,
                         "full-support sampling is guarded to frames of 20 labels");
    }
    const std::uint32_t full = frame.full_mask();
    const std::vector<double> m = simplex(full);
    MassFunction::FocalMap focal;
    for (std::uint32_t bits = 1; bits <= full; ++bits) {
        focal.emplace_hint(focal.end(), bits, m[bits - 1]);
    }
    return MassFunction::from_focal(frame, std::move(focal));
}

} // namespace evicomb

#include "evicomb/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace evicomb {

namespace {

double checked_mass(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "triplet mass " << name << " = " << value << " outside [0, 1]";
        throw MassError(msg.str());
    }
    return value;
}

/// Builds a triplet in canonical order: the larger mass leads, and on a tie
/// the lower singleton index does.
TripletMass ordered_triplet(const Frame& frame, std::size_t i, std::size_t j,
                            double mi, double mj, double mt) {
    const bool swap = (mj > mi) || (mj == mi && j < i);
    if (swap) {
        std::swap(i, j);
        std::swap(mi, mj);
    }
    return TripletMass(frame, i, j, mi, mj, mt);
}

double residual(double a, double b) {
    return std::min(1.0, std::max(0.0, 1.0 - a - b));
}

} // namespace

TripletMass::TripletMass(Frame frame, std::size_t a1, std::size_t a2,
                         double m1, double m2, double mt)
    : frame_(std::move(frame)),
      a1_(a1),
      a2_(a2),
      m1_(checked_mass(m1, "m1")),
      m2_(checked_mass(m2, "m2")),
      mt_(checked_mass(mt, "mt")) {
    if (a1_ >= frame_.size() || a2_ >= frame_.size()) {
        throw MassError("triplet singleton index out of range");
    }
    if (a1_ == a2_) {
        throw MassError("triplet needs two distinct singletons");
    }
    if (m1_ < m2_) {
        std::ostringstream msg;
        msg << "triplet masses out of order: m1 = " << m1_ << " < m2 = " << m2_;
        throw MassError(msg.str());
    }
    if (std::abs(m1_ + m2_ + mt_ - 1.0) > tol::mass_sum) {
        std::ostringstream msg;
        msg << "triplet masses sum to " << m1_ + m2_ + mt_ << ", expected 1";
        throw MassError(msg.str());
    }
}

MultiFocusIntermediate::MultiFocusIntermediate(
    Frame frame, std::vector<std::pair<std::size_t, double>> singletons, double theta)
    : frame_(std::move(frame)), singletons_(std::move(singletons)), theta_(theta) {
    double total = checked_mass(theta_, "theta");
    for (std::size_t i = 0; i < singletons_.size(); ++i) {
        const auto& [index, mass] = singletons_[i];
        if (index >= frame_.size()) {
            throw MassError("intermediate singleton index out of range");
        }
        if (i > 0 && index <= singletons_[i - 1].first) {
            throw MassError("intermediate singletons must be strictly ascending");
        }
        total += checked_mass(mass, "singleton");
    }
    if (std::abs(total - 1.0) > tol::mass_sum) {
        std::ostringstream msg;
        msg << "intermediate masses sum to " << total << ", expected 1";
        throw MassError(msg.str());
    }
}

double MultiFocusIntermediate::singleton_mass(std::size_t index) const noexcept {
    for (const auto& [i, mass] : singletons_) {
        if (i == index) return mass;
    }
    return 0.0;
}

MassFunction MultiFocusIntermediate::to_general() const {
    MassFunction::FocalMap focal;
    for (const auto& [index, mass] : singletons_) {
        if (mass > 0.0) focal[std::uint32_t{1} << index] += mass;
    }
    if (theta_ > 0.0) focal[frame_.full_mask()] += theta_;
    return MassFunction::from_focal(frame_, std::move(focal));
}

TripletMass MultiFocusIntermediate::refocus() const {
    // Zero-mass entries stay in the candidate list, so the tie rule (lower
    // index first) decides deterministically even when all the mass sits on
    // Theta.
    const std::size_t n = singletons_.size();
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (best == n || singletons_[i].second > singletons_[best].second) {
            best = i;
        }
    }
    if (best == n) {
        return TripletMass::vacuous(frame_, 0, 1);
    }
    std::size_t runner = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == best) continue;
        if (runner == n || singletons_[i].second > singletons_[runner].second) {
            runner = i;
        }
    }
    const std::size_t a1 = singletons_[best].first;
    const double m1 = singletons_[best].second;
    std::size_t a2;
    double m2;
    if (runner == n) {
        // Single candidate: the runner-up slot falls to the lowest other
        // index, necessarily with zero mass.
        a2 = a1 == 0 ? 1 : 0;
        m2 = 0.0;
    } else {
        a2 = singletons_[runner].first;
        m2 = singletons_[runner].second;
    }
    return TripletMass(frame_, a1, a2, m1, m2, residual(m1, m2));
}

TripletMass outstanding(const Frame& frame, std::span<const double> singleton_masses) {
    if (frame.size() < 2) {
        throw MassError("outstanding needs a frame of at least two labels");
    }
    if (singleton_masses.size() != frame.size()) {
        std::ostringstream msg;
        msg << "outstanding: " << singleton_masses.size()
            << " masses for a frame of " << frame.size() << " labels";
        throw MassError(msg.str());
    }
    double sum = 0.0;
    for (double m : singleton_masses) sum += checked_mass(m, "singleton");
    if (sum > 1.0 + tol::mass_sum) {
        std::ostringstream msg;
        msg << "outstanding: singleton masses sum to " << sum << ", above 1";
        throw MassError(msg.str());
    }
    std::size_t a1 = 0;
    for (std::size_t i = 1; i < singleton_masses.size(); ++i) {
        if (singleton_masses[i] > singleton_masses[a1]) a1 = i;
    }
    std::size_t a2 = a1 == 0 ? 1 : 0;
    for (std::size_t i = 0; i < singleton_masses.size(); ++i) {
        if (i == a1 || i == a2) continue;
        if (singleton_masses[i] > singleton_masses[a2]) a2 = i;
    }
    const double m1 = singleton_masses[a1];
    const double m2 = singleton_masses[a2];
    return TripletMass(frame, a1, a2, m1, m2, residual(m1, m2));
}

namespace {

void require_focus_overlap(const TripletMass& t1, const TripletMass& t2,
                           std::size_t expected, const char* operation) {
    std::size_t overlap = 0;
    if (t1.focuses_on(t2.a1())) ++overlap;
    if (t1.focuses_on(t2.a2())) ++overlap;
    if (overlap != expected) {
        std::ostringstream msg;
        msg << operation << ": focus pairs share " << overlap
            << " singletons, expected " << expected;
        throw MassError(msg.str());
    }
}

} // namespace

TripletMass combine_equal(const TripletMass& t1, const TripletMass& t2) {
    require_same_frame(t1.frame(), t2.frame(), "combine_equal");
    require_focus_overlap(t1, t2, 2, "combine_equal");
    const std::size_t x = t1.a1();
    const std::size_t y = t1.a2();
    const double x1 = t1.m1(), y1 = t1.m2(), r1 = t1.mt();
    const double x2 = t2.singleton_mass(x), y2 = t2.singleton_mass(y), r2 = t2.mt();

    const double nx = x1 * x2 + x1 * r2 + r1 * x2;
    const double ny = y1 * y2 + y1 * r2 + r1 * y2;
    const double nt = r1 * r2;
    // Equals 1 minus the conflict x1*y2 + y1*x2; summing the surviving
    // channels instead keeps the normalized masses inside [0, 1] at the
    // floating-point level.
    const double k_inverse = nx + ny + nt;
    if (k_inverse <= tol::total_conflict) {
        throw TotalConflictError("total conflict between equal-focus triplets",
                                 TotalConflictError::no_step, "equal-focus");
    }
    const double fx = nx / k_inverse;
    const double fy = ny / k_inverse;
    return ordered_triplet(t1.frame(), x, y, fx, fy, residual(fx, fy));
}

TripletCombination combine_one_shared(const TripletMass& t1, const TripletMass& t2) {
    require_same_frame(t1.frame(), t2.frame(), "combine_one_shared");
    require_focus_overlap(t1, t2, 1, "combine_one_shared");

    // Canonical roles: x is the shared singleton, y the leftover focus of
    // t1, z the leftover focus of t2, wherever each sits in its operand.
    const std::size_t x = t1.focuses_on(t2.a1()) ? t2.a1() : t2.a2();
    const std::size_t y = t1.a1() == x ? t1.a2() : t1.a1();
    const std::size_t z = t2.a1() == x ? t2.a2() : t2.a1();
    const double x1 = t1.singleton_mass(x), y1 = t1.singleton_mass(y), r1 = t1.mt();
    const double x2 = t2.singleton_mass(x), z2 = t2.singleton_mass(z), r2 = t2.mt();

    const double nx = x1 * x2 + x1 * r2 + r1 * x2;
    const double ny = y1 * r2;
    const double nz = r1 * z2;
    const double nt = r1 * r2;
    const double k_inverse = nx + ny + nz + nt;
    if (k_inverse <= tol::total_conflict) {
        throw TotalConflictError("total conflict between one-shared-focus triplets",
                                 TotalConflictError::no_step, "one-shared-focus");
    }
    const double fx = nx / k_inverse;
    const double fy = ny / k_inverse;
    const double fz = nz / k_inverse;
    double theta = 1.0 - fx - fy - fz;
    theta = std::min(1.0, std::max(0.0, theta));

    std::vector<std::pair<std::size_t, double>> singletons{{x, fx}, {y, fy}, {z, fz}};
    std::sort(singletons.begin(), singletons.end());
    MultiFocusIntermediate inter(t1.frame(), std::move(singletons), theta);
    TripletMass refocused = inter.refocus();
    return TripletCombination{std::move(refocused), std::move(inter)};
}

TripletCombination combine_disjoint(const TripletMass& t1, const TripletMass& t2) {
    require_same_frame(t1.frame(), t2.frame(), "combine_disjoint");
    require_focus_overlap(t1, t2, 0, "combine_disjoint");

    const std::size_t x = t1.a1(), y = t1.a2();
    const std::size_t u = t2.a1(), v = t2.a2();
    const double x1 = t1.m1(), y1 = t1.m2(), r1 = t1.mt();
    const double u2 = t2.m1(), v2 = t2.m2(), r2 = t2.mt();

    const double nx = x1 * r2;
    const double ny = y1 * r2;
    const double nu = r1 * u2;
    const double nv = r1 * v2;
    const double nt = r1 * r2;
    const double k_inverse = nx + ny + nu + nv + nt;
    if (k_inverse <= tol::total_conflict) {
        throw TotalConflictError("total conflict between disjoint-focus triplets",
                                 TotalConflictError::no_step, "disjoint-focus");
    }
    const double fx = nx / k_inverse;
    const double fy = ny / k_inverse;
    const double fu = nu / k_inverse;
    const double fv = nv / k_inverse;
    double theta = 1.0 - fx - fy - fu - fv;
    theta = std::min(1.0, std::max(0.0, theta));

    std::vector<std::pair<std::size_t, double>> singletons{
        {x, fx}, {y, fy}, {u, fu}, {v, fv}};
    std::sort(singletons.begin(), singletons.end());
    MultiFocusIntermediate inter(t1.frame(), std::move(singletons), theta);
    TripletMass refocused = inter.refocus();
    return TripletCombination{std::move(refocused), std::move(inter)};
}

TripletMass combine_pair_auto(const TripletMass& t1, const TripletMass& t2) {
    require_same_frame(t1.frame(), t2.frame(), "combine_pair_auto");
    std::size_t overlap = 0;
    if (t1.focuses_on(t2.a1())) ++overlap;
    if (t1.focuses_on(t2.a2())) ++overlap;
    switch (overlap) {
        case 2: return combine_equal(t1, t2);
        case 1: return combine_one_shared(t1, t2).refocused;
        default: return combine_disjoint(t1, t2).refocused;
    }
}

TripletMass fold_combine(std::span<const TripletMass> ts) {
    if (ts.empty()) {
        throw MassError("fold_combine needs at least one triplet");
    }
    TripletMass acc = ts[0];
    for (std::size_t i = 1; i < ts.size(); ++i) {
        try {
            acc = combine_pair_auto(acc, ts[i]);
        } catch (const TotalConflictError& e) {
            std::ostringstream msg;
            msg << e.what() << " (fold step " << i << ")";
            throw TotalConflictError(msg.str(), i, e.context());
        }
    }
    return acc;
}

TripletMass approx_combine(std::span<const TripletMass> ts, double lambda) {
    if (ts.size() < 2) {
        throw MassError("approx_combine needs at least two triplets");
    }
    if (!(lambda >= 0.0)) {
        throw MassError("approx_combine smoothing must be nonnegative");
    }
    const std::size_t l = ts.size();
    const std::size_t x = ts[0].a1();
    std::vector<std::size_t> seconds;
    for (std::size_t i = 0; i < l; ++i) {
        require_same_frame(ts[0].frame(), ts[i].frame(), "approx_combine");
        // The leading mass must sit on the shared focus. Ties pass because
        // both focal masses are then interchangeable.
        if (ts[i].singleton_mass(x) != ts[i].m1()) {
            std::ostringstream msg;
            msg << "approx_combine: input " << i
                << " does not lead with the shared focus '"
                << ts[0].frame().label(x) << "'";
            throw MassError(msg.str());
        }
        if (ts[i].m2() > 0.0) {
            const std::size_t other = ts[i].a1() == x ? ts[i].a2() : ts[i].a1();
            if (std::find(seconds.begin(), seconds.end(), other) != seconds.end()) {
                throw MassError(
                    "approx_combine: second focuses must be pairwise distinct");
            }
            seconds.push_back(other);
        }
    }

    std::vector<double> p(l), c(l), r(l);
    for (std::size_t i = 0; i < l; ++i) {
        p[i] = ts[i].m1();
        c[i] = ts[i].m2();
        r[i] = ts[i].mt();
    }

    // Leading-focus channel. The smoothing constant enters the mass
    // numerator as one flat additive term but sits inside each cross
    // product of the normalizer.
    double prod_p = 1.0;
    for (double v : p) prod_p *= v;
    double cross_mass = 0.0, cross_norm = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
        double term_mass = r[i], term_norm = r[i];
        for (std::size_t j = 0; j < l; ++j) {
            if (j == i) continue;
            term_mass *= p[j];
            term_norm *= p[j] + lambda;
        }
        cross_mass += term_mass;
        cross_norm += term_norm;
    }
    const double numer_x_mass = prod_p + cross_mass + lambda;
    const double numer_x_norm = prod_p + cross_norm;

    // Runner-up channel: only the first input's runner-up survives against
    // the others' ignorance. Later runner-ups feed the normalizer alone,
    // each against the ignorance of everything at or after it.
    double prod_r_tail = 1.0;
    for (std::size_t i = 1; i < l; ++i) prod_r_tail *= r[i];
    const double numer_y = c[0] * prod_r_tail;
    const double numer_theta = r[0] * prod_r_tail;

    double tail = 0.0;
    double suffix_r = 1.0;
    for (std::size_t i = l; i-- > 1;) {
        suffix_r *= r[i];
        tail += c[i] * suffix_r;
    }

    const double k_inverse = numer_x_norm + numer_y + numer_theta + tail;
    if (k_inverse <= tol::total_conflict) {
        throw TotalConflictError("total conflict in approximate combination",
                                 TotalConflictError::no_step, "approximate");
    }

    const double mx = numer_x_mass / k_inverse;
    const double my = numer_y / k_inverse;
    const double mt = 1.0 - mx - my;
    if (!(mx >= 0.0 && mx <= 1.0 && my >= 0.0 && my <= 1.0 &&
          mt >= 0.0 && mt <= 1.0)) {
        std::ostringstream msg;
        msg << "approximate combination left the simplex: m1 = " << mx
            << ", m2 = " << my << ", mt = " << mt << " (smoothing " << lambda << ")";
        throw ApproxBreakdownError(msg.str());
    }
    return ordered_triplet(ts[0].frame(), ts[0].a1(), ts[0].a2(), mx, my, mt);
}

MassFunction to_general(const TripletMass& t) {
    MassFunction::FocalMap focal;
    if (t.m1() > 0.0) focal[std::uint32_t{1} << t.a1()] += t.m1();
    if (t.m2() > 0.0) focal[std::uint32_t{1} << t.a2()] += t.m2();
    if (t.mt() > 0.0) focal[t.frame().full_mask()] += t.mt();
    return MassFunction::from_focal(t.frame(), std::move(focal));
}

} // namespace evicomb

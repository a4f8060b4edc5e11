#include "evicomb/dichotomous.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace evicomb {

namespace {

double checked_mass(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << "dichotomous mass " << name << " = " << value << " outside [0, 1]";
        throw MassError(msg.str());
    }
    return value;
}

} // namespace

DichotomousMass::DichotomousMass(Frame frame, std::size_t focus, double p, double c, double r)
    : frame_(std::move(frame)),
      focus_(focus),
      p_(checked_mass(p, "p")),
      c_(checked_mass(c, "c")),
      r_(checked_mass(r, "r")) {
    if (frame_.size() < 2) {
        throw MassError("dichotomous mass needs a frame of at least two labels");
    }
    if (focus_ >= frame_.size()) {
        throw MassError("dichotomous focus index out of range");
    }
    if (std::abs(p_ + c_ + r_ - 1.0) > tol::mass_sum) {
        std::ostringstream msg;
        msg << "dichotomous masses sum to " << p_ + c_ + r_ << ", expected 1";
        throw MassError(msg.str());
    }
}

MassFunction to_general(const DichotomousMass& d) {
    const std::uint32_t focus_bit = std::uint32_t{1} << d.focus();
    const std::uint32_t full = d.frame().full_mask();
    MassFunction::FocalMap focal;
    if (d.p() > 0.0) focal[focus_bit] += d.p();
    if (d.c() > 0.0) focal[full ^ focus_bit] += d.c();
    if (d.r() > 0.0) focal[full] += d.r();
    return MassFunction::from_focal(d.frame(), std::move(focal));
}

namespace {

struct ChainSums {
    double numer_p = 0.0; // mass channel of {x}
    double numer_c = 0.0; // mass channel of Theta - {x}
    double numer_r = 0.0; // mass channel of Theta
    double k_inverse() const { return numer_p + numer_c + numer_r; }
};

/// Telescoping evaluation of the repeated-focus chain. Two suffix products,
/// one over (p_i + r_i) and one over (c_i + r_i), are built in a single
/// reverse pass; the forward pass then pairs each term's leading p_i or c_i
/// with the running prefix product of r. O(l) time and space.
ChainSums chain_sums(std::span<const DichotomousMass> ds) {
    const std::size_t l = ds.size();
    std::vector<double> suffix_pr(l + 1), suffix_cr(l + 1);
    suffix_pr[l] = suffix_cr[l] = 1.0;
    for (std::size_t i = l; i-- > 0;) {
        suffix_pr[i] = (ds[i].p() + ds[i].r()) * suffix_pr[i + 1];
        suffix_cr[i] = (ds[i].c() + ds[i].r()) * suffix_cr[i + 1];
    }
    ChainSums sums;
    double prefix_r = 1.0;
    for (std::size_t i = 0; i < l; ++i) {
        sums.numer_p += prefix_r * ds[i].p() * suffix_pr[i + 1];
        sums.numer_c += prefix_r * ds[i].c() * suffix_cr[i + 1];
        prefix_r *= ds[i].r();
    }
    sums.numer_r = prefix_r;
    return sums;
}

void require_repeated_focus(std::span<const DichotomousMass> ds, const char* operation) {
    if (ds.empty()) {
        throw MassError(std::string(operation) + " needs at least one mass function");
    }
    for (std::size_t i = 1; i < ds.size(); ++i) {
        require_same_frame(ds[0].frame(), ds[i].frame(), operation);
        if (ds[i].focus() != ds[0].focus()) {
            std::ostringstream msg;
            msg << operation << ": mixed focuses " << ds[0].focus() << " and "
                << ds[i].focus() << " (input " << i << ")";
            throw MassError(msg.str());
        }
    }
}

} // namespace

double normalization_repeated(std::span<const DichotomousMass> ds) {
    require_repeated_focus(ds, "normalization_repeated");
    return chain_sums(ds).k_inverse();
}

DichotomousMass combine_repeated(std::span<const DichotomousMass> ds) {
    require_repeated_focus(ds, "combine_repeated");
    // Left fold with per-step normalization. Associativity makes this equal
    // to normalizing the one-shot chain sums, but the fold stays conditioned
    // for arbitrarily long chains, where the raw degree-l channel products
    // underflow.
    double p = ds[0].p(), c = ds[0].c(), r = ds[0].r();
    for (std::size_t i = 1; i < ds.size(); ++i) {
        const double p2 = ds[i].p(), c2 = ds[i].c(), r2 = ds[i].r();
        const double np = p * p2 + p * r2 + r * p2;
        const double nc = c * c2 + c * r2 + r * c2;
        const double nr = r * r2;
        const double k_inverse = np + nc + nr; // = 1 - p*c2 - c*p2
        if (k_inverse <= tol::total_conflict) {
            std::ostringstream msg;
            msg << "total conflict: repeated-focus chain is not combinable"
                << " (fold step " << i << ")";
            throw TotalConflictError(msg.str(), i);
        }
        p = np / k_inverse;
        c = nc / k_inverse;
        r = nr / k_inverse;
    }
    return DichotomousMass(ds[0].frame(), ds[0].focus(), p, c, r);
}

} // namespace evicomb

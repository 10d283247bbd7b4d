#include "bonnet/theta.hpp"

#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"
#include "bonnet/numerics.hpp"

namespace bonnet {

namespace {
constexpr double pi = std::numbers::pi;
constexpr int max_terms = 200;
const cplx I(0, 1);

cplx ipow(int d) {
    switch (((d % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}
}  // namespace

RhombicLattice::RhombicLattice(double lambda, int min_terms) : lambda_(lambda) {
    if (!(lambda > 0)) throw Error(ErrorCode::invalid_argument, "lattice parameter lambda must be positive");
    const cplx t = tau();
    q_ = std::exp(I * pi * t);
    // Smallest n with the term at the edge of the strip |Im z| <= pi*lambda
    // (third derivative included) below 1e-18 of the leading term.
    const double y = pi * lambda;
    int n = 1;
    for (; n < max_terms; ++n) {
        const double m = 2 * n + 1;
        const double logterm = -pi * lambda * (n + 0.5) * (n + 0.5) + m * y + 3 * std::log(m);
        const double lead = -pi * lambda * 0.25 + y;
        if (logterm - lead < std::log(1e-18) && n * (n - 2.0) > 0) break;
    }
    n_ = std::max(min_terms, n + 1);
    half_.resize(n_ + 1);
    full_.resize(n_ + 1);
    for (int k = 0; k <= n_; ++k) {
        half_[k] = std::exp(I * pi * t * ((k + 0.5) * (k + 0.5)));
        full_[k] = std::exp(I * pi * t * double(k) * double(k));
    }
}

cplx RhombicLattice::theta(int kind, cplx z, int deriv) const {
    if (kind < 1 || kind > 4 || deriv < 0 || deriv > 3)
        throw Error(ErrorCode::invalid_argument, "theta: kind must be 1..4 and deriv 0..3");
    const cplx e1 = std::exp(I * z);
    const cplx e1i = 1.0 / e1;
    const cplx step = (kind <= 2) ? e1 * e1 : e1 * e1;
    const cplx stepi = 1.0 / step;
    cplx p = (kind <= 2) ? e1 : e1 * e1;  // e^{i m z}
    cplx pi_ = (kind <= 2) ? e1i : e1i * e1i;
    const cplx a = ipow(deriv), b = ipow(-deriv);
    cplx sum = (kind >= 3 && deriv == 0) ? cplx(1, 0) : cplx(0, 0);
    double maxterm = std::abs(sum);
    cplx last(0, 0);
    for (int n = 0; n <= n_; ++n) {
        double m;
        cplx c;
        if (kind <= 2) {
            m = 2 * n + 1;
            c = half_[n];
            if (kind == 1 && (n & 1)) c = -c;
        } else {
            if (n == 0) continue;
            m = 2 * n;
            c = full_[n];
            if (kind == 4 && (n & 1)) c = -c;
            if (n == 1) { p = e1 * e1; pi_ = e1i * e1i; }
        }
        const double md = std::pow(m, deriv);
        cplx term;
        if (kind == 1)
            term = 2.0 * c * md * (a * p - b * pi_) / (2.0 * I);
        else
            term = 2.0 * c * md * (a * p + b * pi_) / 2.0;
        if (n == n_) {
            last = term;
            break;
        }
        sum += term;
        maxterm = std::max(maxterm, std::abs(term));
        p *= step;
        pi_ *= stepi;
    }
    if (!std::isfinite(std::abs(sum)) ||
        (std::abs(last) > 1e-16 * std::max(maxterm, 1e-300) && std::abs(last) > 1e-300))
        throw Error(ErrorCode::truncation_tail, "theta: |Im z| outside the safe strip for the truncation order");
    return sum;
}

double RhombicLattice::lattice_distance(cplx z) const {
    const double n = std::round(z.imag() / (pi * lambda_));
    double best = 1e300;
    for (double dn = n - 1; dn <= n + 1; dn += 1) {
        const double re = z.real() - dn * 0.5 * pi;
        const double m = std::round(re / pi);
        const cplx lp = m * pi + dn * pi * tau();
        best = std::min(best, std::abs(z - lp));
    }
    return best;
}

CriticalOmega critical_omega(const RhombicLattice& lat) {
    auto g = [&](double x) { return lat.theta_real(2, x, 1); };
    const double g2 = lat.theta_real(2, 0.0, 2);
    const double hi = pi / 4;
    if (!(g2 > 0) || !(g(hi) < 0))
        throw Error(ErrorCode::no_critical_omega, "no critical omega: lambda must lie in (0, lambda_0)");
    double lo = pi / 8;
    int tries = 0;
    while (!(g(lo) > 0)) {
        lo *= 0.5;
        if (++tries > 80) throw Error(ErrorCode::no_critical_omega, "critical omega is not bracketed");
    }
    const double w = find_root(g, lo, hi, 4e-16);
    return {w, lat.lambda()};
}

double lambda0() {
    auto f = [](double l) { return RhombicLattice(l).theta_real(2, 0.0, 2); };
    return find_root(f, 0.25, 0.45, 4e-16);
}

}  // namespace bonnet

#include "bonnet/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "bonnet/errors.hpp"

namespace bonnet {

namespace {

using GK31 = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisection on a target that is absolute for the whole interval. Boost's own recursion
// is relative to the running estimate, which never terminates when the integral cancels.
double gk_bisect(const std::function<double(double)>& f, double a, double b, double target, int depth,
                 QuadResult& acc) {
    double err = 0, l1 = 0;
    const double v = GK31::integrate(f, a, b, 0, 0, &err, &l1);
    if (err <= target || depth == 0) {
        acc.error += err;
        acc.l1 += l1;
        return v;
    }
    const double m = 0.5 * (a + b);
    return gk_bisect(f, a, m, target / 2, depth - 1, acc) + gk_bisect(f, m, b, target / 2, depth - 1, acc);
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    double err0 = 0, l10 = 0;
    GK31::integrate(f, a, b, 0, 0, &err0, &l10);
    QuadResult r;
    r.value = gk_bisect(f, a, b, std::min(abs_tol, 1e-14 * l10), 20, r);
    const double eps = std::numeric_limits<double>::epsilon();
    if (!std::isfinite(r.value) || r.error > abs_tol + 64 * eps * r.l1)
        throw Error(ErrorCode::quadrature_tolerance, "adaptive quadrature did not reach tolerance");
    return r;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = 0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        s += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + h);
    }
    return s;
}

double find_root(const std::function<double(double)>& f, double a, double b, double xtol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if ((fa > 0) == (fb > 0)) throw Error(ErrorCode::no_convergence, "find_root: no sign change on bracket");
    boost::uintmax_t it = max_iter;
    auto tol = [xtol](double lo, double hi) { return std::abs(hi - lo) <= xtol * std::max(1.0, std::abs(lo)); };
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, it);
    if (static_cast<int>(it) >= max_iter) throw Error(ErrorCode::no_convergence, "find_root: iteration cap");
    return 0.5 * (r.first + r.second);
}

double hermite(double t, double y0, double y1, double d0, double d1, double h) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

}  // namespace bonnet

namespace bonnet {

std::vector<GLNode> gauss_legendre_20(double a, double b) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::vector<GLNode> out;
    out.reserve(20);
    for (size_t i = 0; i < x.size(); ++i) {
        out.push_back({c - h * x[i], h * w[i]});
        out.push_back({c + h * x[i], h * w[i]});
    }
    return out;
}

}  // namespace bonnet

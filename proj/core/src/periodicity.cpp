#include "bonnet/periodicity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"
#include "bonnet/numerics.hpp"

namespace bonnet {

namespace {
constexpr double pi = std::numbers::pi;
}

AuxPolynomials AuxPolynomials::make(const LameData& lame, const SphericalParams& p) {
    AuxPolynomials a;
    a.s1 = p.s1;
    a.s2 = p.s2;
    a.delta = p.delta;
    a.u1p = lame.U1p_omega();
    a.up = lame.Up_omega();
    a.u = lame.U_omega();
    const double u2 = lame.U2_at_omega(), uu = a.u * a.u;
    const double t = a.up + a.s1 * a.s2 * a.u1p;
    a.z0sq = (2 * (a.s1 + a.s2) * a.u1p + a.delta * a.delta * a.u1p * a.u1p - u2) / uu + t * t / (uu * uu);
    a.z0 = a.z0sq > 0 ? std::sqrt(a.z0sq) : 0.0;
    return a;
}

double bpart_integral(const LameData& lame, const SphericalParams& p) {
    const QuarticQ q(lame, p);
    const auto aux = AuxPolynomials::make(lame, p);
    auto g = [&](double psi) {
        const double s = q.s_of_psi(psi);
        return aux.q2(s) / std::sqrt(q.qq(s));
    };
    return integrate_gk(g, 0, pi).value;
}

double theta_integral(const LameData& lame, const SphericalParams& p) {
    const QuarticQ q(lame, p);
    const auto aux = AuxPolynomials::make(lame, p);
    if (!(aux.z0sq > 0)) throw Error(ErrorCode::constraint_violation, "Z0^2 must be positive");
    double mn = 1e300, mx = 0;
    int sign = 0;
    for (int i = 0; i <= 256; ++i) {
        const double v = aux.qt2(q.s_of_psi(pi * i / 256));
        const int sg = v > 0 ? 1 : -1;
        if (sign != 0 && sg != sign) throw Error(ErrorCode::qtilde_vanishes, "Qt2 changes sign on the oval");
        sign = sg;
        mn = std::min(mn, std::abs(v));
        mx = std::max(mx, std::abs(v));
    }
    if (mn <= 1e-10 * mx) throw Error(ErrorCode::qtilde_vanishes, "Qt2 vanishes on the oval");
    auto g = [&](double psi) {
        const double s = q.s_of_psi(psi);
        return aux.z0 * aux.q2(s) / (aux.qt2(s) * std::sqrt(q.qq(s)));
    };
    return std::abs(2 * integrate_gk(g, 0, pi).value);
}

Monodromy monodromy_axis_angle(const FrameCurve& fc) {
    Monodromy r;
    Quat m = fc.monodromy();
    if (m.w < 0) m = -m;
    r.m = m;
    const double sn = m.vec().x * m.vec().x + m.vec().y * m.vec().y + m.vec().z * m.vec().z;
    r.theta = 2 * std::atan2(std::sqrt(sn), m.w);
    if (r.theta < 1e-8) throw Error(ErrorCode::axis_undefined, "monodromy is the identity, axis undefined");
    r.axis = normalized(m.vec());
    return r;
}

Vec3 weighted_gauss_map_integral(const PlanarFamily& fam, const FrameCurve& fc) {
    const int n = fc.steps() / fc.periods();
    if (n % 2 != 0) throw Error(ErrorCode::grid_mismatch, "Simpson needs an even number of frame steps per period");
    const double h = fc.step(), om = fam.omega();
    Vec3 acc;
    for (int i = 0; i <= n; ++i) {
        const ReparamSample s = fc.reparam().eval(i * h);
        const cplx es = fam.sigma_factor(om, s.w);
        const Vec3 nv = frame_apply(fc.node(i), Quat::i() * s.wp - complex_k(es) * s.c);
        const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += nv * (wgt / fam.eh(om, s.w));
    }
    return acc * (h / 3);
}

int fold_count(double theta, int kmax, double tol) {
    for (int k = 1; k <= kmax; ++k) {
        const double x = k * theta / (2 * pi);
        if (std::round(x) >= 1 && std::abs(x - std::round(x)) < tol) return k;
    }
    return 0;
}

PeriodicityReport periodicity_report(const PlanarFamily& fam, const FrameCurve& fc) {
    PeriodicityReport r;
    const Monodromy m = monodromy_axis_angle(fc);
    r.theta = m.theta;
    r.axis = m.axis;
    r.axial = dot(m.axis, weighted_gauss_map_integral(fam, fc));
    r.k = fold_count(m.theta);
    r.period = fc.reparam().period();
    return r;
}

std::vector<double> a_seeds(const LameData& lame, double s_fixed) {
    std::vector<double> out;
    const double s0 = lame.s0();
    auto g = [&](double x) { return a_quadratic(lame, x, s_fixed); };
    const int n = 4000;
    const double lo = s0 + 1e-9, hi = s0 + 40.0;
    double xp = lo, gp = g(lo);
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double gx = g(x);
        if ((gp > 0) != (gx > 0)) {
            const double r = find_root(g, xp, x, 1e-15);
            if (lame.q3(r) > 0) out.push_back(r);
        }
        xp = x;
        gp = gx;
    }
    return out;
}

namespace {

struct Residual {
    double th, bp;
    bool ok;
};

Residual eval_res(const LameData& lame, double target, double delta, double s1, double x) {
    try {
        const SphericalParams p{delta, s1, x};
        return {theta_integral(lame, p) - target, bpart_integral(lame, p), true};
    } catch (const Error&) {
        return {0, 0, false};
    }
}

// 1D Newton for bpart(delta, s1, x) = 0 from x0
std::optional<double> solve_bpart(const LameData& lame, double delta, double s1, double x0) {
    auto g = [&](double x) { return bpart_integral(lame, {delta, s1, x}); };
    double x = x0;
    try {
        double gx = g(x);
        for (int it = 0; it < 50; ++it) {
            const double hx = 1e-6 * std::max(1.0, std::abs(x));
            const double d = (g(x + hx) - g(x - hx)) / (2 * hx);
            if (d == 0 || !std::isfinite(d)) return std::nullopt;
            double step = -gx / d, lam = 1.0;
            for (;;) {
                double xn = x + lam * step, gn = 0;
                bool ok = true;
                try { gn = g(xn); } catch (const Error&) { ok = false; }
                if (ok && std::abs(gn) < std::abs(gx)) { x = xn; gx = gn; break; }
                lam *= 0.5;
                if (lam < 1e-6) return std::abs(gx) < 1e-12 ? std::optional<double>(x) : std::nullopt;
            }
            if (std::abs(lam * step) < 1e-14 * std::max(1.0, std::abs(x)) || std::abs(gx) < 1e-14) return x;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

SphericalSolveResult solve_spherical(const LameData& lame, double theta_target, double s1_fixed,
                                     std::optional<SphericalParams> init, const SphericalSolveOptions& opt) {
    SphericalSolveResult res;
    double delta = 0, x = 0;
    if (init) {
        delta = init->delta;
        x = (init->s1 == s1_fixed) ? init->s2 : init->s1;
    } else {
        res.seeds = a_seeds(lame, s1_fixed);
        bool found = false;
        for (double seed : res.seeds) {
            double d = opt.delta_start, xc = seed, step = opt.delta_step;
            auto x0 = solve_bpart(lame, d, s1_fixed, xc);
            if (!x0) continue;
            xc = *x0;
            Residual r0 = eval_res(lame, theta_target, d, s1_fixed, xc);
            if (!r0.ok) continue;
            while (d < opt.delta_max) {
                const double dn = std::min(d + step, opt.delta_max);
                auto xn = solve_bpart(lame, dn, s1_fixed, xc);
                Residual rn = xn ? eval_res(lame, theta_target, dn, s1_fixed, *xn) : Residual{0, 0, false};
                if (!rn.ok) {
                    step *= 0.5;
                    if (step < 1e-4) break;
                    continue;
                }
                if ((r0.th > 0) != (rn.th > 0)) {
                    const double t = r0.th / (r0.th - rn.th);
                    delta = d + t * (dn - d);
                    x = xc + t * (*xn - xc);
                    found = true;
                    break;
                }
                d = dn;
                xc = *xn;
                r0 = rn;
            }
            if (found) {
                res.seed_used = seed;
                break;
            }
        }
        if (!found) throw Error(ErrorCode::no_convergence, "delta continuation did not reach the target angle");
    }

    // damped Newton in (delta, x)
    Residual r = eval_res(lame, theta_target, delta, s1_fixed, x);
    if (!r.ok) throw Error(ErrorCode::no_convergence, "initial spherical parameters are not admissible");
    int it = 0;
    for (; it < opt.max_newton; ++it) {
        if (std::max(std::abs(r.th), std::abs(r.bp)) < opt.tol) break;
        const double hd = 1e-6 * std::max(1.0, std::abs(delta)), hx = 1e-6 * std::max(1.0, std::abs(x));
        const Residual dp = eval_res(lame, theta_target, delta + hd, s1_fixed, x);
        const Residual dm = eval_res(lame, theta_target, delta - hd, s1_fixed, x);
        const Residual xp = eval_res(lame, theta_target, delta, s1_fixed, x + hx);
        const Residual xm = eval_res(lame, theta_target, delta, s1_fixed, x - hx);
        if (!dp.ok || !dm.ok || !xp.ok || !xm.ok)
            throw Error(ErrorCode::degenerate_jacobian, "Jacobian stencil left the admissible region");
        const double a = (dp.th - dm.th) / (2 * hd), b = (xp.th - xm.th) / (2 * hx);
        const double c = (dp.bp - dm.bp) / (2 * hd), d = (xp.bp - xm.bp) / (2 * hx);
        const double det = a * d - b * c;
        if (!std::isfinite(det) || std::abs(det) < 1e-14 * (std::abs(a * d) + std::abs(b * c)))
            throw Error(ErrorCode::degenerate_jacobian, "singular Jacobian in spherical Newton");
        const double sd = -(d * r.th - b * r.bp) / det, sx = -(-c * r.th + a * r.bp) / det;
        const double n0 = std::hypot(r.th, r.bp);
        double lam = 1.0;
        for (;;) {
            const Residual rn = eval_res(lame, theta_target, delta + lam * sd, s1_fixed, x + lam * sx);
            if (rn.ok && std::hypot(rn.th, rn.bp) < n0) {
                delta += lam * sd;
                x += lam * sx;
                r = rn;
                break;
            }
            lam *= 0.5;
            if (lam < 1e-8) break;
        }
        if (lam < 1e-8) break;
    }
    if (std::max(std::abs(r.th), std::abs(r.bp)) >= 1e-8)
        throw Error(ErrorCode::no_convergence, "spherical Newton did not converge");
    res.params = {delta, s1_fixed, x};
    res.theta = r.th + theta_target;
    res.bpart = r.bp;
    res.newton_iterations = it;
    return res;
}

namespace {

struct FourierRes {
    double r1, r2, theta;
    bool ok;
};

FourierRes fourier_residual(const PlanarFamily& fam, const std::vector<BasisFunction>& basis,
                            const std::vector<double>& coeffs, double period, double cos_target, int steps) {
    try {
        auto rep = std::make_shared<LinearReparam>(basis, coeffs, period);
        if (rep->max_abs_wp() >= 1.0) return {0, 0, 0, false};
        FrameCurve fc(fam, rep, 1, steps);
        const Quat m = fc.monodromy();
        const Vec3 ax = normalized(m.vec());
        const double axial = dot(ax, weighted_gauss_map_integral(fam, fc));
        const double th = 2 * std::atan2(norm(m.vec()), std::abs(m.w));
        // signed real part keeps the residual smooth through theta = pi
        return {m.w - cos_target, axial, th, true};
    } catch (const Error&) {
        return {0, 0, 0, false};
    }
}

}  // namespace

FourierSolveResult solve_fourier_family(const PlanarFamily& fam, const std::vector<BasisFunction>& basis,
                                        std::vector<double> coeffs, double period, double theta_target,
                                        std::array<int, 2> free_index, int max_iter, double tol, int steps) {
    const int n = static_cast<int>(coeffs.size());
    if (free_index[0] < 0 || free_index[1] < 0 || free_index[0] >= n || free_index[1] >= n ||
        free_index[0] == free_index[1])
        throw Error(ErrorCode::invalid_argument, "fourier solve: bad free coefficient indices");
    {
        LinearReparam probe(basis, coeffs, period);
        if (probe.max_abs_wp() >= 1.0) throw Error(ErrorCode::constraint_violation, "initial coefficients have |w'| >= 1");
    }
    // the sign of the real part of the monodromy is kept from the initial guess
    double cos_target = std::cos(theta_target / 2);
    {
        auto rep = std::make_shared<LinearReparam>(basis, coeffs, period);
        FrameCurve fc(fam, rep, 1, steps);
        if (fc.monodromy().w < 0) cos_target = -cos_target;
    }
    auto F = [&](const std::vector<double>& c) { return fourier_residual(fam, basis, c, period, cos_target, steps); };
    FourierRes r = F(coeffs);
    if (!r.ok) throw Error(ErrorCode::constraint_violation, "initial coefficients are not admissible");
    int it = 0;
    for (; it < max_iter; ++it) {
        if (std::max(std::abs(r.r1), std::abs(r.r2)) < tol) break;
        double J[2][2];
        for (int col = 0; col < 2; ++col) {
            const int k = free_index[col];
            const double h = 1e-6 * std::max(1.0, std::abs(coeffs[k]));
            auto cp = coeffs, cm = coeffs;
            cp[k] += h;
            cm[k] -= h;
            const FourierRes p = F(cp), m = F(cm);
            if (!p.ok || !m.ok) throw Error(ErrorCode::constraint_violation, "Jacobian stencil violates |w'| < 1");
            J[0][col] = (p.r1 - m.r1) / (2 * h);
            J[1][col] = (p.r2 - m.r2) / (2 * h);
        }
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (!std::isfinite(det) || det == 0) throw Error(ErrorCode::degenerate_jacobian, "singular Jacobian in Fourier solve");
        const double s0 = -(J[1][1] * r.r1 - J[0][1] * r.r2) / det;
        const double s1 = -(-J[1][0] * r.r1 + J[0][0] * r.r2) / det;
        const double n0 = std::hypot(r.r1, r.r2);
        double lam = 1.0;
        bool moved = false;
        while (lam >= 1e-6) {
            auto c = coeffs;
            c[free_index[0]] += lam * s0;
            c[free_index[1]] += lam * s1;
            const FourierRes rn = F(c);
            if (rn.ok && std::hypot(rn.r1, rn.r2) < n0) {
                coeffs = c;
                r = rn;
                moved = true;
                break;
            }
            lam *= 0.5;
        }
        if (!moved) break;
    }
    if (std::max(std::abs(r.r1), std::abs(r.r2)) >= 1e-8)
        throw Error(ErrorCode::no_convergence, "Fourier family solve did not converge");
    FourierSolveResult out;
    out.coeffs = coeffs;
    out.theta = r.theta;
    out.axial = r.r2;
    out.cos_residual = r.r1;
    out.iterations = it;
    return out;
}

}  // namespace bonnet

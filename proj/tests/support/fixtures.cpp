#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bonnet/theta.hpp"

namespace bonnet::testing {

namespace {

constexpr double pi = std::numbers::pi;

Torus finish(Torus t) {
    t.frame = std::make_unique<FrameCurve>(*t.fam, t.rep, 2 * t.k, 4096);
    t.surf = std::make_unique<IsothermicSurface>(*t.fam, *t.frame);
    t.pair = std::make_unique<BonnetAssembly>(*t.surf, 1.0);
    return t;
}

// grid over the w-range of the 3-fold torus, away from the u = pi/2 + ... poles
template <class F>
double grid_max(double wmin, double wmax, F&& f) {
    double m = 0;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 10; ++j) {
            const double u = 2 * pi * (i + 0.37) / 24, w = wmin + (wmax - wmin) * (j + 0.5) / 10;
            m = std::max(m, f(u, w));
        }
    return m;
}

// fourth order central difference
template <class F>
auto d1(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

template <class F>
auto d2(F&& f, double x, double h) {
    return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

}  // namespace

Torus make_spherical(int k, double s1) {
    Torus t;
    t.fam = std::make_unique<PlanarFamily>(kLambda);
    t.k = k;
    t.solve = solve_spherical(t.fam->lame(), 2 * pi / k, s1);
    t.rep = std::make_shared<SphericalReparam>(t.fam->lame(), t.solve.params);
    return finish(std::move(t));
}

Torus make_fourier(const std::vector<double>& coeffs, int k) {
    Torus t;
    t.fam = std::make_unique<PlanarFamily>(kLambda);
    t.k = k;
    t.rep = std::make_shared<LinearReparam>(fourier_abc_basis(), coeffs, 2 * pi);
    return finish(std::move(t));
}

const Torus& torus_three() {
    static const Torus t = make_spherical(3, kS1Three);
    return t;
}

const Torus& torus_four() {
    static const Torus t = make_spherical(4, kS1Four);
    return t;
}

const Torus& torus_fourier() {
    static const Torus t = make_fourier(kFourier, 2);
    return t;
}

DiscreteNet sample_net(const Torus& t, int n, int m) {
    DiscreteNet net;
    net.n = n;
    net.m = m;
    net.periodic = {true, true};
    net.vertices.resize(static_cast<size_t>(n) * m);
    for (int j = 0; j < m; ++j) {
        const VSlice s = t.surf->slice(t.v_span() * j / m);
        for (int i = 0; i < n; ++i) net.at(i, j) = t.surf->f(2 * pi * i / n, s);
    }
    return net;
}

std::array<Vec3, 4> random_isothermic_quad(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1, 1);
    // planar quads with complex cross ratio -1, placed in a random plane
    const cplx a(U(rng), U(rng)), b(U(rng), U(rng)), d(U(rng), U(rng));
    const cplx c = (a * d + a * b - 2.0 * b * d) / (2.0 * a - b - d);
    const Vec3 e1 = normalized(Vec3(U(rng), U(rng), U(rng)));
    const Vec3 e2 = normalized(cross(e1, Vec3(U(rng), U(rng), U(rng))));
    const Vec3 o(U(rng), U(rng), U(rng));
    auto emb = [&](cplx z) { return o + e1 * z.real() + e2 * z.imag(); };
    return {emb(a), emb(b), emb(c), emb(d)};
}

double theta_quasi_periodicity(const RhombicLattice& lat) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> re(-pi, pi), im(-pi * lat.lambda(), 0.0);
    const cplx q = lat.nome(), ptau = pi * lat.tau();
    double m = 0;
    for (int k = 0; k < 64; ++k) {
        const cplx z(re(rng), im(rng));
        const cplx t = lat.theta1(z);
        const cplx a = lat.theta1(z + pi), b = lat.theta1(z + ptau);
        const cplx expect_b = -t * std::exp(cplx(0, -2.0) * z) / q;
        m = std::max(m, std::abs(a + t) / std::max(std::abs(t), 1e-300));
        m = std::max(m, std::abs(b - expect_b) / std::max(std::abs(expect_b), 1e-300));
    }
    return m;
}

double theta_shift_identity(const RhombicLattice& lat) {
    double m = 0;
    for (int k = 0; k < 40; ++k) {
        const cplx z(-1.5 + 0.077 * k, 0.6 * std::sin(1.3 * k) * lat.lambda());
        m = std::max(m, std::abs(lat.theta2(z) - lat.theta1(z + pi / 2)));
    }
    return m;
}

double theta_conjugation(const RhombicLattice& lat) {
    const cplx rot = std::exp(cplx(0, -pi / 4));
    double m = 0;
    for (int k = 0; k < 40; ++k) {
        const cplx z(-1.5 + 0.077 * k, 0.6 * std::cos(0.7 * k) * lat.lambda());
        m = std::max(m, std::abs(std::conj(lat.theta1(z)) - rot * lat.theta1(std::conj(z))));
    }
    return m;
}

double wronskian_variation(const LameData& L) {
    auto wr = [&](double u) { return L.U(u, 1) * L.U1(u) - L.U(u) * L.U1(u, 1); };
    const double w0 = wr(0.2);
    double m = 0;
    for (int k = 0; k < 40; ++k) {
        const double u = -1.4 + 0.071 * k;
        if (std::abs(std::remainder(u - pi / 2, pi)) < 0.05) continue;
        m = std::max(m, std::abs(wr(u) - w0));
    }
    return m;
}

double riccati_residual(const PlanarFamily& fam, double wmin, double wmax) {
    const LameData& L = fam.lame();
    return grid_max(wmin, wmax, [&](double u, double w) {
        const double hu = d1([&](double x) { return std::log(fam.eh(x, w)); }, u, 1e-3);
        const double e = fam.eh(u, w);
        return std::abs(hu - L.U(u) * e - L.U1(u) / e);
    });
}

double hw_squared_residual(const PlanarFamily& fam, double wmin, double wmax) {
    const LameData& L = fam.lame();
    return grid_max(wmin, wmax, [&](double u, double w) {
        const double hw = d1([&](double x) { return std::log(fam.eh(u, x)); }, w, 1e-3);
        const double e = fam.eh(u, w), U = L.U(u), U1 = L.U1(u);
        const double U2 = L.U2_at_omega() - 6 * U * U1;
        return std::abs(hw * hw + U1 * U1 / (e * e) - 2 * L.U1(u, 1) / e + U2 + 2 * L.U(u, 1) * e + U * U * e * e);
    });
}

double harmonic_residual(const PlanarFamily& fam, double wmin, double wmax) {
    return grid_max(wmin, wmax, [&](double u, double w) {
        const double huu = d2([&](double x) { return std::log(fam.eh(x, w)); }, u, 1e-3);
        const double hww = d2([&](double x) { return std::log(fam.eh(u, x)); }, w, 1e-3);
        return std::abs(huu + hww);
    });
}

double cauchy_riemann_residual(const PlanarFamily& fam, double wmin, double wmax) {
    return grid_max(wmin, wmax, [&](double u, double w) {
        const cplx s = fam.sigma_factor(u, w);
        const double hu = d1([&](double x) { return std::log(fam.eh(x, w)); }, u, 1e-3);
        const double hw = d1([&](double x) { return std::log(fam.eh(u, x)); }, w, 1e-3);
        const double su = (std::conj(s) * d1([&](double x) { return fam.sigma_factor(x, w); }, u, 1e-3)).imag();
        const double sw = (std::conj(s) * d1([&](double x) { return fam.sigma_factor(u, x); }, w, 1e-3)).imag();
        return std::max(std::abs(hu - sw), std::abs(hw + su));
    });
}

double frame_unit_defect(const FrameCurve& fc) {
    double m = 0;
    for (int i = 0; i <= fc.steps(); ++i) m = std::max(m, std::abs(fc.node(i).norm() - 1));
    for (int i = 0; i < 997; ++i) m = std::max(m, std::abs(fc.phi(fc.span() * (i + 0.5) / 997).norm() - 1));
    return m;
}

double max_abs_wprime(const Reparam& rep, int samples) {
    double m = 0;
    for (int i = 0; i < samples; ++i) m = std::max(m, std::abs(rep.eval(rep.period() * i / samples).wp));
    return m;
}

double integrability_residual(const IsothermicSurface& S, double v_span) {
    const PlanarFamily& fam = S.family();
    const double hd = 1e-3;
    auto h = [&](double u, double v) { return std::log(fam.eh(u, S.slice(v).r.w)); };
    // p = -<n_u, f_u> e^{-h}, q = -<n_v, f_v> e^{-h}
    auto p = [&](double u, double v) {
        const VSlice s = S.slice(v);
        const Vec3 nu = d1([&](double x) { return S.normal(x, s); }, u, hd);
        return -dot(nu, S.f_u(u, s)) / fam.eh(u, s.r.w);
    };
    auto q = [&](double u, double v) {
        const VSlice s = S.slice(v);
        const Vec3 nv = d1([&](double y) { return S.normal(u, S.slice(y)); }, v, hd);
        return -dot(nv, S.f_v(u, s)) / fam.eh(u, s.r.w);
    };
    double m = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double u = 2 * pi * (i + 0.31) / 6, v = v_span * (j + 0.47) / 6;
            const double lap = d2([&](double x) { return h(x, v); }, u, hd) + d2([&](double y) { return h(u, y); }, v, hd);
            const double pu = p(u, v), qu = q(u, v);
            const double hu = d1([&](double x) { return h(x, v); }, u, hd), hv = d1([&](double y) { return h(u, y); }, v, hd);
            const double pv = d1([&](double y) { return p(u, y); }, v, hd), qx = d1([&](double x) { return q(x, v); }, u, hd);
            m = std::max({m, std::abs(lap + pu * qu), std::abs(pv - hv * qu), std::abs(qx - hu * pu)});
        }
    return m;
}

}  // namespace bonnet::testing

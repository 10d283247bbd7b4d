// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--known-failures 11,...]
//
// Without the flag the exit status is 0 only if every criterion passes. With it,
// the status is 0 only if exactly the listed criteria fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bonnet/theta.hpp"
#include "fixtures.hpp"

using namespace bonnet;
using namespace bonnet::testing;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// verify_pair on the full 256 grid, shared by criteria 5, 7 and 8
const PairReport& full_report(const Torus& t) {
    static std::map<const Torus*, PairReport> cache;
    auto it = cache.find(&t);
    if (it == cache.end()) it = cache.emplace(&t, verify_pair(*t.pair, t.k, VerifyOptions{})).first;
    return it->second;
}

Outcome c1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double l0 = lambda0();
    const double dt = seconds(t0), err = std::abs(l0 - 0.354729892522);
    return {err <= 1e-9 && dt < 1, fmt("lambda0 = %.15f, |err| = %.2e, %.3f s", l0, err, dt)};
}

Outcome c2() {
    const auto t0 = std::chrono::steady_clock::now();
    const double w = critical_omega(RhombicLattice(kLambda)).omega;
    const double dt = seconds(t0), err = std::abs(w - kOmega);
    return {err <= 1e-8 && dt < 1, fmt("omega = %.15f, |err| = %.2e, %.3f s", w, err, dt)};
}

Outcome golden(double s1, double target, double delta, double s2) {
    const LameData lame(kLambda);
    const auto t0 = std::chrono::steady_clock::now();
    const SphericalSolveResult r = solve_spherical(lame, target, s1);
    const double dt = seconds(t0);
    const double ed = std::abs(r.params.delta - delta) / delta, es = std::abs(r.params.s2 - s2) / std::abs(s2);
    const double th = theta_integral(lame, r.params), bp = bpart_integral(lame, r.params);
    const bool ok = ed <= 1e-6 && es <= 1e-6 && std::abs(th - target) <= 1e-6 && std::abs(bp) <= 1e-6 && dt < 60;
    return {ok, fmt("delta = %.10f (rel %.1e), s2 = %.10f (rel %.1e), theta - target = %.1e, bpart = %.1e, %.2f s",
                    r.params.delta, ed, r.params.s2, es, th - target, bp, dt)};
}

Outcome c3() { return golden(kS1Three, 2 * pi / 3, kDeltaThree, kS2Three); }
Outcome c4() { return golden(kS1Four, pi / 2, kDeltaFour, kS2Four); }

Outcome c5() {
    bool ok = true;
    std::string d;
    for (const Torus* t : {&torus_three(), &torus_four()}) {
        const PairReport& r = full_report(*t);
        const double m = std::max({r.closure_f, r.closure_plus, r.closure_minus});
        ok = ok && m <= 1e-5;
        d += fmt("%d-fold: f %.1e, f+ %.1e, f- %.1e; ", t->k, r.closure_f, r.closure_plus, r.closure_minus);
    }
    return {ok, d + "relative to diameter, 64 x 64"};
}

Outcome c6() {
    bool ok = true;
    std::string d;
    for (const Torus* t : {&torus_three(), &torus_four(), &torus_fourier()}) {
        const InvolutionResiduals r = involution_residuals(*t->surf, 32, 32);
        ok = ok && r.dual <= 1e-7 && r.inversion <= 1e-7;
        d += fmt("k = %d: dual %.1e, inversion %.1e; ", t->k, r.dual, r.inversion);
    }
    return {ok, d};
}

Outcome c7() {
    bool ok = true;
    std::string d;
    for (const Torus* t : {&torus_three(), &torus_four()}) {
        const PairReport& r = full_report(*t);
        ok = ok && r.isometry <= 1e-6 && r.mean_curvature <= 1e-4 && r.hopf_modulus <= 1e-4;
        d += fmt("%d-fold: isometry %.1e, |H+ - H-| %.1e, ||Q+| - |Q-|| %.1e; ", t->k, r.isometry, r.mean_curvature,
                 r.hopf_modulus);
    }
    return {ok, d + "256 x 256"};
}

Outcome c8() {
    VerifyOptions small;
    small.nu_fd = small.nv_fd = 16;
    const PairReport f = verify_pair(*torus_fourier().pair, 2, small);
    bool ok = f.congruence_rotation > 1e-2 && f.congruence_reflection > 1e-2;
    std::string d = fmt("Fourier: rotation %.3e, reflection %.3e; ", f.congruence_rotation, f.congruence_reflection);
    for (const Torus* t : {&torus_three(), &torus_four()}) {
        const PairReport& r = full_report(*t);
        ok = ok && r.congruence_reflection < 1e-4;
        d += fmt("%d-fold reflection %.1e; ", t->k, r.congruence_reflection);
    }
    return {ok, d + "relative to diameter"};
}

Outcome c9() {
    bool ok = true;
    std::string d;
    for (const Torus* t : {&torus_three(), &torus_four(), &torus_fourier()}) {
        std::vector<double> us, vs;
        for (int i = 0; i < 24; ++i) us.push_back(2 * pi * i / 24);
        for (int j = 0; j < 24; ++j) vs.push_back(t->v_span() * j / 24);
        const KppResult k = kpp_quadrature(*t->surf, 1.0, us, vs);
        std::vector<Vec3> P, M;
        for (double u : us)
            for (double v : vs) {
                const PairPoint p = t->pair->eval(u, v);
                P.push_back(p.plus);
                M.push_back(p.minus);
            }
        const double e = std::max(max_dev_after_translation(k.plus, P), max_dev_after_translation(k.minus, M));
        ok = ok && e <= 1e-5;
        d += fmt("k = %d: %.1e; ", t->k, e);
    }
    return {ok, d + "24 x 24, after translation"};
}

Outcome c10() {
    const LameData lame(kLambda);
    const auto seeds = a_seeds(lame, kS1Three);
    if (seeds.empty()) return {false, "no root of A"};
    const double c = seeds.front(), o = kS1Three;
    std::vector<double> x, y;
    std::string d = fmt("A(center, s1) = %.1e; ", a_quadratic(lame, c, o));
    for (double delta : {1e-2, 5e-3, 2.5e-3}) {
        const double b = bpart_integral(lame, {delta, o, c});
        x.push_back(std::log(delta));
        y.push_back(std::log(std::abs(b)));
        d += fmt("bpart(%.4f) = %.3e; ", delta, b);
    }
    // least squares slope
    double mx = 0, my = 0;
    for (size_t k = 0; k < x.size(); ++k) mx += x[k] / x.size(), my += y[k] / y.size();
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < x.size(); ++k) sxy += (x[k] - mx) * (y[k] - my), sxx += (x[k] - mx) * (x[k] - mx);
    const double slope = sxy / sxx;
    return {slope >= 2.8, d + fmt("slope %.3f", slope)};
}

Outcome c11() {
    const DiscreteNet seed = sample_net(torus_three(), 9, 12);
    const OptimizeResult r = optimize_torus(seed);
    const double diam = diameter(seed.vertices), rel = r.max_displacement / diam;
    double quad = 0;
    for (unsigned s = 1; s <= 1000; ++s) {
        const auto q = random_isothermic_quad(s);
        DiscreteNet net;
        net.n = net.m = 2;
        net.vertices = {q[0], q[3], q[1], q[2]};
        const double scale = 1 + std::pow(diameter(net.vertices), 2);
        quad = std::max(quad, pair_quad_defect(net, 0, 0, 1.0) / scale);
    }
    const bool ok = r.residual < 1e-8 && rel < 1e-3 && quad <= 1e-10;
    return {ok, fmt("residual %.2e after %d iterations (seed %.2e, cross ratio defect %.2f), displacement %.2f x "
                    "diameter (limit 1e-3), random quad pair defect %.1e",
                    r.residual, r.iterations, r.initial_residual, max_cross_ratio_defect(seed), rel, quad)};
}

Outcome c12() {
    std::vector<std::pair<std::string, bool>> parts;
    double q = 0, cj = 0;
    for (double l : {0.2, kLambda, 0.6}) {
        const RhombicLattice lat(l);
        q = std::max(q, theta_quasi_periodicity(lat));
        cj = std::max(cj, theta_conjugation(lat));
    }
    const Torus& t = torus_three();
    const PlanarFamily& fam = *t.fam;
    const double ric = riccati_residual(fam, 0.3, 1.4), har = harmonic_residual(fam, 0.3, 1.4),
                 cr = cauchy_riemann_residual(fam, 0.3, 1.4), wr = wronskian_variation(fam.lame());
    double unit = 0, wp = 0;
    for (const Torus* x : {&torus_three(), &torus_four(), &torus_fourier()}) {
        unit = std::max(unit, frame_unit_defect(*x->frame));
        wp = std::max(wp, max_abs_wprime(*x->rep));
    }
    const bool ok = q < 1e-10 && cj < 1e-12 && ric < 1e-8 && har < 1e-6 && cr < 1e-6 && wr < 1e-9 && unit < 1e-10 &&
                    wp <= 1.0;
    return {ok, fmt("quasi-periodicity %.1e, conjugation %.1e, Riccati %.1e, harmonic %.1e, Cauchy-Riemann %.1e, "
                    "Wronskian %.1e, frame unit %.1e, max |w'| %.6f",
                    q, cj, ric, har, cr, wr, unit, wp)};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    bool known_given = false;
    for (int a = 1; a < argc; ++a) {
        const std::string s = argv[a];
        if (s == "--known-failures" && a + 1 < argc) {
            known_given = true;
            std::stringstream ss(argv[++a]);
            for (std::string tok; std::getline(ss, tok, ',');) known.insert(std::stoi(tok));
        } else {
            std::fprintf(stderr, "usage: acceptance [--known-failures i,j,...]\n");
            return 2;
        }
    }
    const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
    std::set<int> failed;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(id);
        std::printf("%s criterion %d: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), seconds(t0));
        std::fflush(stdout);
    }
    std::printf("%zu of %zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    if (!known_given) return failed.empty() ? 0 : 1;
    if (failed != known) {
        std::printf("failures differ from the expected set\n");
        return 1;
    }
    return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"
#include "bonnet/spherical.hpp"
#include "fixtures.hpp"

using namespace bonnet;
using namespace bonnet::testing;

namespace {
const LameData& lame() {
    static const LameData L(kLambda);
    return L;
}

const SphericalParams kThree{kDeltaThree, kS1Three, kS2Three};

ErrorCode code_of(const SphericalParams& p) {
    try {
        QuarticQ q(lame(), p);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ok;
}
}  // namespace

TEST_CASE("quartic oval for the 3-fold parameters") {
    const QuarticQ q(lame(), kThree);
    // golden values of this implementation
    CHECK(q.lo() == doctest::Approx(0.396103075).epsilon(1e-8));
    CHECK(q.hi() == doctest::Approx(4.075452423).epsilon(1e-8));
    CHECK(std::abs(q.value(q.lo())) < 1e-10);
    CHECK(std::abs(q.value(q.hi())) < 1e-10);
    CHECK(q.center() == kS2Three);
    CHECK(q.lo() > lame().s0());
    for (int k = 1; k < 100; ++k) CHECK(q.value(q.lo() + (q.hi() - q.lo()) * k / 100) > 0);
    // the polynomial root oracle sees two real roots at the oval ends and a complex pair
    int real = 0;
    for (const cplx& r : q.roots()) {
        if (std::abs(r.imag()) < 1e-9) {
            ++real;
            CHECK(std::min(std::abs(r.real() - q.lo()), std::abs(r.real() - q.hi())) < 1e-9);
        }
    }
    CHECK(real == 2);
    CHECK(spherical_period(q) == doctest::Approx(3.668883413).epsilon(1e-8));
}

TEST_CASE("small delta: double roots and the alpha asymptotic") {
    const double c = 2.0, o = -3.0, delta = 1e-4;
    const QuarticQ q(lame(), {delta, o, c});
    const double alpha = std::sqrt(lame().q3(c)) / std::abs(c - o);
    CHECK(std::abs((q.hi() - c) / delta - alpha) < 1e-3 * alpha);
    CHECK(std::abs((c - q.lo()) / delta - alpha) < 1e-3 * alpha);
    for (const cplx& r : q.roots()) {
        const double d = std::min(std::abs(r - c), std::abs(r - o));
        CHECK(d < 10 * delta);
    }
}

TEST_CASE("rejected parameter sets") {
    CHECK(code_of({0.0, kS1Three, kS2Three}) == ErrorCode::invalid_argument);
    CHECK(code_of({-1.0, kS1Three, kS2Three}) == ErrorCode::invalid_argument);
    CHECK(code_of({1.0, 1.0, 2.0}) == ErrorCode::wrong_oval_type);
    CHECK(code_of({1.0, -1.0, -2.0}) == ErrorCode::wrong_oval_type);
}

TEST_CASE("ovals never cross s0") {
    // Q(s0) = -(s0 - s1)^2 (s0 - s2)^2 < 0, so an oval around a center with Q3 > 0 stays above s0
    for (double d : {0.5, 2.0, 8.0})
        for (double o : {-3.0, -0.5})
            for (double c : {lame().s0() + 1e-3, lame().s0() + 0.1}) {
                const QuarticQ q(lame(), {d, o, c});
                CHECK(q.lo() > lame().s0());
                CHECK(lame().q3(q.lo()) > 0);
            }
}

TEST_CASE("reparametrization properties") {
    const SphericalReparam rep(lame(), kThree);
    const double V = rep.period();
    const QuarticQ& q = rep.quartic();
    CHECK(max_abs_wprime(rep) <= 1.0);
    double acc = 0;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) {
        const double v = V * i / n;
        const double wt = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        acc += wt * rep.eval(v).wp;
        // symmetry about V/2
        CHECK(std::abs(rep.eval(V / 2 + v).w - rep.eval(V / 2 - v).w) < 1e-10);
        const double s = rep.s_of_v(v);
        CHECK(s >= q.lo() - 1e-12);
        CHECK(s <= q.hi() + 1e-12);
        // w'(v) = sqrt(Q(s)) / (delta sqrt(Q3(s))); sqrt(Q) amplifies the error of s near the turning points
        const double chain = std::sqrt(std::max(0.0, q.value(s))) / (kThree.delta * std::sqrt(lame().q3(s)));
        CHECK(std::abs(std::abs(rep.eval(v).wp) - chain) < 1e-6);
    }
    CHECK(std::abs(acc * V / n / 3) < 1e-10);
    CHECK(std::abs(rep.eval(V).w - rep.eval(0).w) < 1e-12);
    CHECK(std::abs(rep.eval(0.37 + V).w - rep.eval(0.37).w) < 1e-12);
}

TEST_CASE("s(v) solves s'^2 = Q(s) / delta^2 away from the turning points") {
    const SphericalReparam rep(lame(), kThree);
    const QuarticQ& q = rep.quartic();
    const double h = 1e-4, V = rep.period();
    for (int i = 1; i < 40; ++i) {
        const double v = V * i / 40;
        const double s = rep.s_of_v(v);
        if (s - q.lo() < 0.05 || q.hi() - s < 0.05) continue;
        const double sp = (rep.s_of_v(v - 2 * h) - 8 * rep.s_of_v(v - h) + 8 * rep.s_of_v(v + h) - rep.s_of_v(v + 2 * h)) / (12 * h);
        CHECK(std::abs(sp * sp - q.value(s) / (kThree.delta * kThree.delta)) < 1e-8 * (1 + sp * sp));
    }
}

TEST_CASE("w at the oval start") {
    const QuarticQ q(lame(), kThree);
    const double w0 = w_at_oval_start(lame(), q);
    // crude independent quadrature with the substitution s = s0 + t^2
    const double s0 = lame().s0(), T = std::sqrt(q.lo() - s0);
    const int n = 20000;
    double acc = 0;
    for (int i = 0; i <= n; ++i) {
        const double t = T * i / n, s = s0 + t * t;
        const double g = t == 0 ? 2 / std::sqrt(lame().q3_prime(s0)) : 2 * t / std::sqrt(lame().q3(s));
        acc += ((i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2)) * g;
    }
    CHECK(w0 == doctest::Approx(acc * T / n / 3).epsilon(1e-9));
    const SphericalReparam rep(lame(), kThree);
    CHECK(rep.eval(0).w == doctest::Approx(w0).epsilon(1e-12));
}

TEST_CASE("A quadratic") {
    const LameData& L = lame();
    SUBCASE("two real roots at s1 = 1/2") {
        const auto r = a_roots_in_s2(L, 0.5);
        CHECK(r.size() == 2);
        for (double s2 : r) CHECK(std::abs(a_quadratic(L, 0.5, s2)) < 1e-10);
    }
    SUBCASE("large s1 asymptotics") {
        const double s1 = 1e4;
        const auto r = a_roots_in_s2(L, s1);
        REQUIRE(r.size() == 2);
        const double small = L.Up_omega() / (s1 * L.U1p_omega());
        const double large = -s1 + L.U2_at_omega() / L.U1p_omega();
        CHECK(std::abs(r[1] - small) < 1e-3 * std::abs(small));
        CHECK(std::abs(r[0] - large) < 1e-3);
    }
    SUBCASE("seeds of the 3-fold and 4-fold runs") {
        for (double s : {kS1Three, kS1Four}) {
            for (double c : a_seeds(L, s)) {
                CHECK(std::abs(a_quadratic(L, c, s)) < 1e-10);
                CHECK(L.q3(c) > 0);
            }
        }
    }
}

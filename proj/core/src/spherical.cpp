#include "bonnet/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/Polynomials>

#include "bonnet/errors.hpp"
#include "bonnet/numerics.hpp"

namespace bonnet {

namespace {
constexpr double pi = std::numbers::pi;

// divide a polynomial (highest first) by (s - r), dropping the remainder
std::vector<double> deflate(const std::vector<double>& c, double r) {
    std::vector<double> out(c.size() - 1);
    double acc = 0;
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        acc = acc * r + c[i];
        out[i] = acc;
    }
    return out;
}
}  // namespace

QuarticQ::QuarticQ(const LameData& lame, const SphericalParams& p) : p_(p) {
    if (!(p.delta > 0) || !std::isfinite(p.s1) || !std::isfinite(p.s2))
        throw Error(ErrorCode::invalid_argument, "spherical parameters need delta > 0 and finite s1, s2");
    const double sg = p.s1 + p.s2, pr = p.s1 * p.s2, d2 = p.delta * p.delta;
    const auto& q3 = lame.q3_coeffs();
    c_ = {-1.0, 2 * sg + d2 * q3[0], -(sg * sg + 2 * pr) + d2 * q3[1], 2 * sg * pr + d2 * q3[2], -pr * pr + d2 * q3[3]};

    const bool pos1 = lame.q3(p.s1) > 0, pos2 = lame.q3(p.s2) > 0;
    if (pos1 == pos2)
        throw Error(ErrorCode::wrong_oval_type, "Q3 must be positive at exactly one of s1, s2");
    center_ = pos1 ? p.s1 : p.s2;
    other_ = pos1 ? p.s2 : p.s1;

    auto f = [this](double s) { return value(s); };
    auto outward = [&](double dir) {
        double step = 1e-3 * std::max(1e-3, p.delta);
        double prev = center_, x = center_ + dir * step;
        for (int it = 0; it < 200 && f(x) > 0; ++it) {
            prev = x;
            step *= 2;
            x = center_ + dir * step;
        }
        if (f(x) > 0) throw Error(ErrorCode::no_real_oval, "oval endpoint not bracketed");
        return find_root(f, std::min(prev, x), std::max(prev, x), 1e-15);
    };
    lo_ = outward(-1.0);
    hi_ = outward(1.0);
    if (!(lo_ > lame.s0()))
        throw Error(ErrorCode::oval_outside_q3, "real oval of Q is not inside the real oval of Q3");

    auto d = deflate(deflate(std::vector<double>(c_.begin(), c_.end()), lo_), hi_);
    qq_ = {-d[0], -d[1], -d[2]};
    // the cofactor must have complex roots, otherwise Q has a second real oval
    if (qq_[1] * qq_[1] - 4 * qq_[0] * qq_[2] >= 0)
        throw Error(ErrorCode::wrong_oval_type, "Q has four real roots");
}

double QuarticQ::value(double s) const {
    return (((c_[0] * s + c_[1]) * s + c_[2]) * s + c_[3]) * s + c_[4];
}

double QuarticQ::s_of_psi(double psi) const { return mid() - half_width() * std::cos(psi); }

std::array<cplx, 4> QuarticQ::roots() const {
    Eigen::Matrix<double, 5, 1> lowfirst;
    for (int i = 0; i < 5; ++i) lowfirst(i) = c_[4 - i];
    Eigen::PolynomialSolver<double, 4> solver(lowfirst);
    std::array<cplx, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = solver.roots()(i);
    return r;
}

double spherical_period(const QuarticQ& q) {
    auto g = [&](double psi) { return 1.0 / std::sqrt(q.qq(q.s_of_psi(psi))); };
    return 2 * q.params().delta * integrate_gk(g, 0, pi).value;
}

double w_at_oval_start(const LameData& lame, const QuarticQ& q) {
    const auto& c = lame.q3_coeffs();
    const double s0 = lame.s0();
    const auto q2 = deflate(std::vector<double>(c.begin(), c.end()), s0);
    auto g = [&](double t) {
        const double s = s0 + t * t;
        return 2.0 / std::sqrt((q2[0] * s + q2[1]) * s + q2[2]);
    };
    return integrate_gk(g, 0, std::sqrt(q.lo() - s0)).value;
}

SphericalReparam::SphericalReparam(const LameData& lame, const SphericalParams& p, int steps)
    : lame_(&lame), q_(lame, p) {
    if (steps < 16) throw Error(ErrorCode::invalid_argument, "spherical reparam: too few steps");
    period_ = spherical_period(q_);
    h_ = period_ / steps;
    nodes_.resize(steps + 1);
    double psi = 0, w = w_at_oval_start(lame, q_);
    auto dw_of = [&](double ps) {
        const double s = q_.s_of_psi(ps), sq = std::sqrt(q_.qq(s));
        return q_.half_width() * std::sin(ps) * sq / (p.delta * std::sqrt(lame.q3(s)));
    };
    auto dpsi_of = [&](double ps) { return std::sqrt(q_.qq(q_.s_of_psi(ps))) / p.delta; };
    nodes_[0] = {psi, w, dpsi_of(psi), dw_of(psi)};
    for (int i = 0; i < steps; ++i) {
        // psi' depends on psi only, w' on psi only
        const double k1 = dpsi_of(psi), l1 = dw_of(psi);
        const double k2 = dpsi_of(psi + h_ / 2 * k1), l2 = dw_of(psi + h_ / 2 * k1);
        const double k3 = dpsi_of(psi + h_ / 2 * k2), l3 = dw_of(psi + h_ / 2 * k2);
        const double k4 = dpsi_of(psi + h_ * k3), l4 = dw_of(psi + h_ * k3);
        psi += h_ / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        w += h_ / 6 * (l1 + 2 * l2 + 2 * l3 + l4);
        nodes_[i + 1] = {psi, w, dpsi_of(psi), dw_of(psi)};
    }
}

double SphericalReparam::psi_of_v(double v) const {
    const double n = std::floor(v / period_);
    double r = v - n * period_;
    int i = static_cast<int>(r / h_);
    const int last = static_cast<int>(nodes_.size()) - 2;
    if (i > last) i = last;
    if (i < 0) i = 0;
    const double t = (r - i * h_) / h_;
    const Node &a = nodes_[i], &b = nodes_[i + 1];
    return hermite(t, a.psi, b.psi, a.dpsi, b.dpsi, h_) + 2 * pi * n;
}

double SphericalReparam::s_of_v(double v) const { return q_.s_of_psi(psi_of_v(v)); }

ReparamSample SphericalReparam::eval(double v) const {
    const double n = std::floor(v / period_);
    double r = v - n * period_;
    int i = static_cast<int>(r / h_);
    const int last = static_cast<int>(nodes_.size()) - 2;
    if (i > last) i = last;
    if (i < 0) i = 0;
    const double t = (r - i * h_) / h_;
    const Node &a = nodes_[i], &b = nodes_[i + 1];
    const double psi = hermite(t, a.psi, b.psi, a.dpsi, b.dpsi, h_);
    const double w = hermite(t, a.w, b.w, a.dw, b.dw, h_);
    const auto& p = q_.params();
    const double s = q_.s_of_psi(psi);
    const double sq3 = std::sqrt(lame_->q3(s));
    ReparamSample out;
    out.w = w;
    out.wp = q_.half_width() * std::sin(psi) * std::sqrt(q_.qq(s)) / (p.delta * sq3);
    out.c = -(s - p.s1) * (s - p.s2) / (p.delta * sq3);
    return out;
}

double a_quadratic(const LameData& lame, double s1, double s2) {
    const double d = s1 - s2;
    return d * d * lame.U1p_omega() * s1 - 0.5 * lame.q3_prime(s1) * d + lame.q3(s1);
}

std::vector<double> a_roots_in_s2(const LameData& lame, double s1) {
    const double a = lame.U1p_omega() * s1, b = -0.5 * lame.q3_prime(s1), c = lame.q3(s1);
    std::vector<double> out;
    if (a == 0) {
        if (b != 0) out.push_back(s1 + c / b);
        return out;
    }
    const double disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    const double sq = std::sqrt(disc);
    // stable quadratic formula for d = s1 - s2
    const double qv = -0.5 * (b + std::copysign(sq, b));
    std::vector<double> ds;
    if (qv != 0) ds = {qv / a, c / qv};
    else ds = {0.0, 0.0};
    for (double d : ds) out.push_back(s1 - d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace bonnet

#include "bonnet/planar.hpp"

#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"
#include "bonnet/numerics.hpp"

namespace bonnet {

namespace {
constexpr double pi = std::numbers::pi;
const cplx I(0, 1);
constexpr double pole_tol = 1e-6;
}  // namespace

PlanarFamily::PlanarFamily(LameData lame) : lame_(std::move(lame)) {}

void PlanarFamily::check_pole(double u, double w) const {
    const cplx a = (cplx(u, w) + omega()) / 2.0;
    if (lame_.lattice().lattice_distance(a) < pole_tol)
        throw Error(ErrorCode::pole_proximity, "planar family evaluated at the pole u + i w = -omega");
}

cplx PlanarFamily::ratio(double u, double w) const {
    check_pole(u, w);
    const cplx z(u, w);
    const auto& L = lame_.lattice();
    return L.theta2((z - omega()) / 2.0) / L.theta1((z + omega()) / 2.0);
}

cplx PlanarFamily::gamma(double u, double w) const {
    check_pole(u, w);
    const cplx z(u, w);
    const auto& L = lame_.lattice();
    return -I * R() * L.theta1((z - 3.0 * omega()) / 2.0) / L.theta1((z + omega()) / 2.0);
}

cplx PlanarFamily::gamma_u(double u, double w) const {
    const cplx x = ratio(u, w);
    return -I * x * x;
}

double PlanarFamily::eh(double u, double w) const { return std::norm(ratio(u, w)); }

cplx PlanarFamily::sigma_factor(double u, double w) const {
    const cplx g = gamma_u(u, w);
    return g / std::abs(g);
}

cplx PlanarFamily::w1(double w) const {
    const auto& L = lame_.lattice();
    if (L.lattice_distance(cplx(0, w)) < pole_tol)
        throw Error(ErrorCode::pole_proximity, "W1 is singular at w = 0");
    return I * lame_.K() * L.theta2(cplx(omega(), -w)) / L.theta1(cplx(0, w));
}

LinearReparam::LinearReparam(std::vector<BasisFunction> basis, std::vector<double> coeffs, double period)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)), period_(period) {
    if (basis_.size() != coeffs_.size() || basis_.empty())
        throw Error(ErrorCode::invalid_argument, "basis and coefficient counts differ");
    if (!(period_ > 0)) throw Error(ErrorCode::invalid_argument, "period must be positive");
}

ReparamSample LinearReparam::eval(double v) const {
    ReparamSample s;
    for (size_t i = 0; i < basis_.size(); ++i) {
        s.w += coeffs_[i] * basis_[i].f(v);
        s.wp += coeffs_[i] * basis_[i].df(v);
    }
    if (std::abs(s.wp) > 1.0)
        throw Error(ErrorCode::constraint_violation, "reparametrization has |w'| > 1");
    s.c = std::sqrt(1.0 - s.wp * s.wp);
    return s;
}

double LinearReparam::max_abs_wp(int samples) const {
    double m = 0;
    for (int i = 0; i < samples; ++i) {
        const double v = period_ * i / samples;
        double wp = 0;
        for (size_t k = 0; k < basis_.size(); ++k) wp += coeffs_[k] * basis_[k].df(v);
        m = std::max(m, std::abs(wp));
    }
    return m;
}

double LinearReparam::min_w(int samples) const {
    double m = 1e300;
    for (int i = 0; i < samples; ++i) {
        const double v = period_ * i / samples;
        double w = 0;
        for (size_t k = 0; k < basis_.size(); ++k) w += coeffs_[k] * basis_[k].f(v);
        m = std::min(m, w);
    }
    return m;
}

std::vector<BasisFunction> fourier_abc_basis() {
    const double p = pi, p2 = pi * pi;
    return {
        {[=](double v) { return std::sin(v) / p - std::cos(v) / p2; },
         [=](double v) { return std::cos(v) / p + std::sin(v) / p2; }},
        {[=](double v) { return -std::sin(2 * v) / (2 * p) + std::cos(2 * v) / (4 * p2); },
         [=](double v) { return -std::cos(2 * v) / p - std::sin(2 * v) / (2 * p2); }},
        {[](double) { return 1.0; }, [](double) { return 0.0; }},
    };
}

FrameCurve::FrameCurve(const PlanarFamily& fam, std::shared_ptr<const Reparam> rep, int periods, int steps_per_period)
    : fam_(&fam), rep_(std::move(rep)), periods_(periods) {
    if (periods_ < 1 || steps_per_period < 4)
        throw Error(ErrorCode::invalid_argument, "frame: need at least one period and four steps");
    const int n = periods_ * steps_per_period;
    span_ = periods_ * rep_->period();
    h_ = span_ / n;
    nodes_.resize(n + 1);
    dnodes_.resize(n + 1);
    Quat p = Quat::one();
    nodes_[0] = p;
    Quat g0 = generator(0.0);
    dnodes_[0] = g0 * p;
    for (int i = 0; i < n; ++i) {
        const double v = i * h_;
        const Quat gm = generator(v + h_ / 2);
        const Quat g1 = generator(v + h_);
        const Quat k1 = g0 * p;
        const Quat k2 = gm * (p + k1 * (h_ / 2));
        const Quat k3 = gm * (p + k2 * (h_ / 2));
        const Quat k4 = g1 * (p + k3 * h_);
        p = p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h_ / 6);
        p = p / p.norm();
        nodes_[i + 1] = p;
        dnodes_[i + 1] = g1 * p;
        g0 = g1;
    }
}

Quat FrameCurve::generator(double v) const {
    const ReparamSample s = rep_->eval(v);
    return complex_k(fam_->w1(s.w)) * s.c;
}

Quat FrameCurve::phi(double v) const {
    double n = std::floor(v / span_);
    double r = v - n * span_;
    if (r >= span_) { r -= span_; n += 1; }
    const int n_int = static_cast<int>(n);
    int i = static_cast<int>(r / h_);
    if (i >= steps()) i = steps() - 1;
    const double t = (r - i * h_) / h_;
    const Quat &a = nodes_[i], &b = nodes_[i + 1], &da = dnodes_[i], &db = dnodes_[i + 1];
    Quat q(hermite(t, a.w, b.w, da.w, db.w, h_), hermite(t, a.x, b.x, da.x, db.x, h_),
           hermite(t, a.y, b.y, da.y, db.y, h_), hermite(t, a.z, b.z, da.z, db.z, h_));
    q = q / q.norm();
    if (n_int != 0) {
        const Quat m = n_int > 0 ? nodes_.back() : nodes_.back().conj();
        for (int k = 0; k < std::abs(n_int); ++k) q = q * m;
    }
    return q;
}

VSlice IsothermicSurface::slice(double v) const {
    VSlice s;
    s.v = v;
    s.phi = frame_->phi(v);
    s.r = frame_->reparam().eval(v);
    return s;
}

Vec3 IsothermicSurface::f(double u, const VSlice& s) const {
    return frame_apply(s.phi, complex_j(fam_->gamma(u, s.r.w)));
}

Vec3 IsothermicSurface::f_u(double u, const VSlice& s) const {
    return frame_apply(s.phi, complex_j(fam_->gamma_u(u, s.r.w)));
}

Vec3 IsothermicSurface::f_v(double u, const VSlice& s) const {
    const cplx gu = fam_->gamma_u(u, s.r.w);
    const double e = std::abs(gu);
    const Quat inner = Quat::i() * s.r.c + complex_k(gu / e) * s.r.wp;
    return frame_apply(s.phi, inner) * e;
}

Vec3 IsothermicSurface::normal(double u, const VSlice& s) const {
    const cplx es = fam_->sigma_factor(u, s.r.w);
    const Quat inner = Quat::i() * s.r.wp - complex_k(es) * s.r.c;
    return frame_apply(s.phi, inner);
}

}  // namespace bonnet

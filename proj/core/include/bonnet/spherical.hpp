#pragma once

// Reparametrizations w(v) with spherical v-curves, built from the quartic
// Q(s) = -(s - s1)^2 (s - s2)^2 + delta^2 Q3(s) and s = e^{-h(omega, w)}.

#include <array>
#include <vector>

#include "bonnet/lame.hpp"
#include "bonnet/planar.hpp"

namespace bonnet {

struct SphericalParams {
    double delta = 0;
    double s1 = 0;
    double s2 = 0;
};

class QuarticQ {
public:
    // Isolates the real oval around whichever of s1, s2 has Q3 > 0.
    QuarticQ(const LameData& lame, const SphericalParams& p);

    const SphericalParams& params() const { return p_; }
    double value(double s) const;
    const std::array<double, 5>& coeffs() const { return c_; }  // highest degree first

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double half_width() const { return 0.5 * (hi_ - lo_); }
    double center() const { return center_; }  // the one of s1, s2 inside the oval
    double other() const { return other_; }

    // Q(s) = (s - lo)(hi - s) qq(s) with qq > 0 on the oval
    double qq(double s) const { return (qq_[0] * s + qq_[1]) * s + qq_[2]; }

    // s = mid - half_width cos(psi)
    double s_of_psi(double psi) const;

    // all four roots, for diagnostics
    std::array<cplx, 4> roots() const;

private:
    SphericalParams p_;
    std::array<double, 5> c_;
    std::array<double, 3> qq_;
    double lo_ = 0, hi_ = 0, center_ = 0, other_ = 0;
};

class SphericalReparam final : public Reparam {
public:
    SphericalReparam(const LameData& lame, const SphericalParams& p, int steps = 8192);

    double period() const override { return period_; }
    ReparamSample eval(double v) const override;

    const QuarticQ& quartic() const { return q_; }
    double s_of_v(double v) const;
    double psi_of_v(double v) const;
    const SphericalParams& params() const { return q_.params(); }

private:
    struct Node {
        double psi, w, dpsi, dw;
    };
    Node rhs(double psi) const;

    const LameData* lame_;
    QuarticQ q_;
    double period_ = 0;
    double h_ = 0;
    std::vector<Node> nodes_;
};

// Real period 2 delta int_{oval} ds / sqrt(Q).
double spherical_period(const QuarticQ& q);

// w at the lower oval endpoint: int_{s0}^{lo} ds / sqrt(Q3).
double w_at_oval_start(const LameData& lame, const QuarticQ& q);

// A(s1, s2) = (s1 - s2)^2 U1'(w) s1 - Q3'(s1)(s1 - s2)/2 + Q3(s1).
double a_quadratic(const LameData& lame, double s1, double s2);

// Real roots s2 of A(s1, .) = 0 (zero, one or two values, ascending).
std::vector<double> a_roots_in_s2(const LameData& lame, double s1);

}  // namespace bonnet

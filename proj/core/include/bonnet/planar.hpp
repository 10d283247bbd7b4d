#pragma once

// Isothermic cylinders with closed planar u-curves on the rhombic lattice.

#include <functional>
#include <memory>
#include <vector>

#include "bonnet/lame.hpp"
#include "bonnet/quat.hpp"

namespace bonnet {

class PlanarFamily {
public:
    explicit PlanarFamily(double lambda) : PlanarFamily(LameData(lambda)) {}
    explicit PlanarFamily(LameData lame);

    const LameData& lame() const { return lame_; }
    double omega() const { return lame_.omega(); }
    double R() const { return lame_.R(); }

    cplx gamma(double u, double w) const;
    cplx gamma_u(double u, double w) const;
    double eh(double u, double w) const;            // e^{h(u,w)} = |gamma_u|
    cplx sigma_factor(double u, double w) const;    // e^{i sigma} = gamma_u / |gamma_u|
    cplx w1(double w) const;

private:
    // theta_2((z - omega)/2) / theta_1((z + omega)/2), z = u + i w
    cplx ratio(double u, double w) const;
    void check_pole(double u, double w) const;

    LameData lame_;
};

struct ReparamSample {
    double w = 0;
    double wp = 0;  // w'(v)
    double c = 0;   // signed root of 1 - w'^2 multiplying the frame generator
};

// A reparametrization v -> w(v), periodic with period().
class Reparam {
public:
    virtual ~Reparam() = default;
    virtual double period() const = 0;
    virtual ReparamSample eval(double v) const = 0;
};

class ConstantReparam final : public Reparam {
public:
    ConstantReparam(double w, double period) : w_(w), period_(period) {}
    double period() const override { return period_; }
    ReparamSample eval(double) const override { return {w_, 0.0, 1.0}; }

private:
    double w_, period_;
};

struct BasisFunction {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

// w(v) = sum_i coeffs[i] * basis[i](v), with c = +sqrt(1 - w'^2).
class LinearReparam final : public Reparam {
public:
    LinearReparam(std::vector<BasisFunction> basis, std::vector<double> coeffs, double period);
    double period() const override { return period_; }
    ReparamSample eval(double v) const override;
    const std::vector<double>& coeffs() const { return coeffs_; }
    const std::vector<BasisFunction>& basis() const { return basis_; }

    // max |w'| and min w over a uniform sample of one period
    double max_abs_wp(int samples = 2048) const;
    double min_w(int samples = 2048) const;

private:
    std::vector<BasisFunction> basis_;
    std::vector<double> coeffs_;
    double period_;
};

// The three-parameter trigonometric family
// w = C + A(sin v/pi - cos v/pi^2) + B(-sin 2v/(2pi) + cos 2v/(4pi^2)), coefficients ordered (A, B, C).
std::vector<BasisFunction> fourier_abc_basis();

// Unit quaternion path with Phi(0) = 1 and Phi' Phi^{-1} = c W1(w) k.
class FrameCurve {
public:
    FrameCurve(const PlanarFamily& fam, std::shared_ptr<const Reparam> rep, int periods = 1, int steps_per_period = 4096);

    const Reparam& reparam() const { return *rep_; }
    std::shared_ptr<const Reparam> reparam_ptr() const { return rep_; }
    double span() const { return span_; }
    int periods() const { return periods_; }
    int steps() const { return static_cast<int>(nodes_.size()) - 1; }
    double step() const { return h_; }

    Quat phi(double v) const;
    Quat node(int i) const { return nodes_[i]; }
    double node_v(int i) const { return i * h_; }
    // Phi(period) for the single period monodromy
    Quat monodromy() const { return phi(rep_->period()); }
    Quat generator(double v) const;  // Phi'(v) Phi(v)^{-1}

private:
    const PlanarFamily* fam_;
    std::shared_ptr<const Reparam> rep_;
    int periods_;
    double span_, h_;
    std::vector<Quat> nodes_, dnodes_;
};

// Everything on one v-line that the immersion needs.
struct VSlice {
    double v = 0;
    Quat phi;
    ReparamSample r;
};

class IsothermicSurface {
public:
    IsothermicSurface(const PlanarFamily& fam, const FrameCurve& frame) : fam_(&fam), frame_(&frame) {}

    const PlanarFamily& family() const { return *fam_; }
    const FrameCurve& frame() const { return *frame_; }

    VSlice slice(double v) const;
    Vec3 f(double u, const VSlice& s) const;
    Vec3 f(double u, double v) const { return f(u, slice(v)); }
    Vec3 f_u(double u, const VSlice& s) const;
    Vec3 f_v(double u, const VSlice& s) const;
    Vec3 normal(double u, const VSlice& s) const;
    Vec3 normal(double u, double v) const { return normal(u, slice(v)); }

private:
    const PlanarFamily* fam_;
    const FrameCurve* frame_;
};

}  // namespace bonnet

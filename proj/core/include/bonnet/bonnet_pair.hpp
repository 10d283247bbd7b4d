#pragma once

// Bonnet pair cylinders f+- assembled from an isothermic cylinder with planar
// u-curves, a direct path-integration oracle, and the verification report.

#include <array>
#include <functional>
#include <vector>

#include "bonnet/periodicity.hpp"
#include "bonnet/planar.hpp"

namespace bonnet {

struct PairPoint {
    Vec3 plus, minus;
};

class BonnetAssembly {
public:
    // B-hat is normalized to vanish at (u_base, w(0)); the constant moves into B-tilde.
    BonnetAssembly(const IsothermicSurface& surf, double eps, double u_base = 0.0);

    const IsothermicSurface& surface() const { return *surf_; }
    double epsilon() const { return eps_; }

    double bhat_raw(double u, double w) const;
    double bhat(double u, double w) const { return bhat_raw(u, w) - c0_; }
    double bhat_u(double u, double w) const;  // Im_C(gamma / gamma_u), for checks
    cplx btilde_small(double w) const;
    Vec3 btilde_prime(double v) const;
    Vec3 btilde(double v) const;  // gauge matched to bhat()

    PairPoint eval(double u, const VSlice& s, const Vec3& bt_raw) const;
    PairPoint eval(double u, double v) const;
    Vec3 f_plus(double u, double v) const { return eval(u, v).plus; }
    Vec3 f_minus(double u, double v) const { return eval(u, v).minus; }

    // Everything needed on one v-line.
    struct Line {
        VSlice s;
        Vec3 bt_raw;
    };
    Line line(double v) const;
    PairPoint eval(double u, const Line& l) const { return eval(u, l.s, l.bt_raw); }

private:
    Vec3 btilde_raw(double v) const;

    const IsothermicSurface* surf_;
    double eps_;
    double c0_ = 0;
    double coef_bhat_ = 0, t2pp_over_t2_ = 0;
    cplx coef_bt_;
    std::vector<Vec3> bt_nodes_, dbt_nodes_;
};

// Vec3-valued one-form alpha = a_u du + a_v dv on the (u, v) domain.
using OneForm = std::function<std::pair<Vec3, Vec3>(double u, const VSlice& s)>;

// Integrates alpha from (0, 0) along v at u = 0, then along u, to each (us[i], vs[j]).
// Result is row-major in (i, j).
std::vector<Vec3> integrate_one_form(const IsothermicSurface& surf, const OneForm& alpha,
                                     const std::vector<double>& us, const std::vector<double>& vs);

// Integral of alpha around the boundary of [u0, u1] x [v0, v1].
Vec3 loop_integral(const IsothermicSurface& surf, const OneForm& alpha, double u0, double u1, double v0, double v1);

OneForm dual_form(const IsothermicSurface& surf);
// (+-eps - s f) d(s f)^* (+-eps + s f) for the surface scaled by s
OneForm kpp_form(const IsothermicSurface& surf, double eps, double sign, double scale = 1.0);

struct KppResult {
    std::vector<Vec3> plus, minus;  // row-major on (us, vs)
    double loop_residual = 0;
};

// f+- by direct integration of the KPP one-form. Throws path_dependence when a
// rectangle loop integral exceeds loop_tol relative to the surface size.
KppResult kpp_quadrature(const IsothermicSurface& surf, double eps, const std::vector<double>& us,
                         const std::vector<double>& vs, double scale = 1.0, double loop_tol = 1e-6);

// max |a_i - b_i - t| after the least squares translation t
double max_dev_after_translation(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

struct InvolutionResiduals {
    double dual = 0;       // f* + f(pi - u, v) after translation
    double inversion = 0;  // R^2 f / |f|^2 - f(2 omega - u, v)
};

InvolutionResiduals involution_residuals(const IsothermicSurface& surf, int nu, int nv);

struct Procrustes {
    double rotation = 0;    // RMS with a proper rotation
    double reflection = 0;  // RMS with an improper one
};

Procrustes procrustes_rms(const std::vector<Vec3>& a, const std::vector<Vec3>& b);
double diameter(const std::vector<Vec3>& pts);

struct PairReport {
    double isometry = 0;          // max relative mismatch of E, F, G between f+ and f-
    double metric_factor = 0;     // max relative | |f+-_u| - (eps^2 + |f|^2) e^{-h} |
    double conformality = 0;      // max |E - G|/(E + G) and |F|/(E + G) over f+-
    double mean_curvature = 0;    // max |H+ - H-|
    double hopf_modulus = 0;      // max | |Q+| - |Q-| |
    cplx hopf_difference;         // mean of Q+ - Q-
    double hopf_variation = 0;    // max |Q+ - Q- - mean| / |mean|
    double closure_f = 0;         // max |F(u, v + kV) - F(u, v)| / diameter
    double closure_plus = 0;
    double closure_minus = 0;
    double symmetry_plus = 0;     // rotational symmetry inheritance, relative to diameter
    double symmetry_minus = 0;
    double congruence_rotation = 0;    // best RMS / diameter, proper rotations
    double congruence_reflection = 0;  // best RMS / diameter, with reflection
    double diameter_plus = 0;
    int k = 0;
};

struct VerifyOptions {
    int nu_fd = 256, nv_fd = 256;         // grid for fundamental forms and curvature
    int nu_close = 64, nv_close = 64;     // grid for closure and congruence
    double h = 2e-3;                      // finite difference step
};

struct SurfaceForms {
    double E = 0, F = 0, G = 0, H = 0;
    cplx Q;  // (L - N - 2iM) / 4
};

struct PairForms {
    SurfaceForms plus, minus;
};

// v-lines at v + m h, m = -2..2, for the finite difference stencils
using StencilLines = std::array<BonnetAssembly::Line, 5>;
StencilLines stencil_lines(const BonnetAssembly& pair, double v, double h);
// fourth order finite differences
PairForms pair_forms(const BonnetAssembly& pair, double u, const StencilLines& lines, double h);

// The frame of surf must cover at least 2k periods.
PairReport verify_pair(const BonnetAssembly& pair, int k, const VerifyOptions& opt = {});

}  // namespace bonnet

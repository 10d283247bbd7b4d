#pragma once

// Closure conditions of the Bonnet pair cylinders: rationality of the
// monodromy angle and the vanishing axial B-part.

#include <array>
#include <optional>
#include <vector>

#include "bonnet/planar.hpp"
#include "bonnet/spherical.hpp"

namespace bonnet {

struct AuxPolynomials {
    double s1 = 0, s2 = 0, delta = 0, u1p = 0, up = 0, u = 0;
    double z0sq = 0, z0 = 0;

    static AuxPolynomials make(const LameData& lame, const SphericalParams& p);
    double q2(double s) const { return -(s - s1) * (s - s2) + delta * delta * u1p * s; }
    double qt2(double s) const {
        const double t = 1 + s * (up + s1 * s2 * u1p) / (u * u);
        return z0sq * s * s - t * t;
    }
};

// int_{oval} Q2(s) / sqrt(Q(s)) ds
double bpart_integral(const LameData& lame, const SphericalParams& p);
// |theta| with theta/2 = int_{oval} Z0 Q2 / (Qt2 sqrt(Q)) ds
double theta_integral(const LameData& lame, const SphericalParams& p);

struct Monodromy {
    Quat m;          // Phi(0)^{-1} Phi(period), sign chosen with m.w >= 0
    double theta = 0;  // in [0, pi]
    Vec3 axis;
};

Monodromy monodromy_axis_angle(const FrameCurve& fc);

// int_0^{period} e^{-h(omega, w(v))} n(omega, v) dv over the frame nodes (Simpson).
Vec3 weighted_gauss_map_integral(const PlanarFamily& fam, const FrameCurve& fc);

struct PeriodicityReport {
    double theta = 0;
    Vec3 axis;
    double axial = 0;  // <A, weighted Gauss map integral>
    int k = 0;         // fold count, 0 when theta is not a rational multiple of 2 pi with k <= kmax
    double period = 0;
};

PeriodicityReport periodicity_report(const PlanarFamily& fam, const FrameCurve& fc);

// Smallest k <= kmax with k theta in 2 pi N, within tol in units of 2 pi.
int fold_count(double theta, int kmax = 64, double tol = 1e-6);

struct SphericalSolveOptions {
    double delta_start = 0.02;
    double delta_step = 0.02;
    double delta_max = 4.0;
    int max_newton = 60;
    double tol = 1e-11;
};

struct SphericalSolveResult {
    SphericalParams params;
    double theta = 0;
    double bpart = 0;
    int newton_iterations = 0;
    std::vector<double> seeds;  // admissible roots x of A(x, s_fixed)
    double seed_used = 0;
};

// Oval centers x > s0 with Q3(x) > 0 and A(x, s_fixed) = 0.
std::vector<double> a_seeds(const LameData& lame, double s_fixed);

// Solves theta(delta, s2) = theta_target, bpart(delta, s2) = 0 with s1 held fixed.
// Without init, seeds from the roots of A and continues in delta.
SphericalSolveResult solve_spherical(const LameData& lame, double theta_target, double s1_fixed,
                                     std::optional<SphericalParams> init = std::nullopt,
                                     const SphericalSolveOptions& opt = {});

struct FourierSolveResult {
    std::vector<double> coeffs;
    double theta = 0;
    double axial = 0;
    double cos_residual = 0;
    int iterations = 0;
};

// Damped Newton on two free coefficients of a LinearReparam so that the monodromy
// angle equals theta_target and the axial weighted Gauss map integral vanishes.
FourierSolveResult solve_fourier_family(const PlanarFamily& fam, const std::vector<BasisFunction>& basis,
                                        std::vector<double> coeffs, double period, double theta_target,
                                        std::array<int, 2> free_index = {0, 1}, int max_iter = 30,
                                        double tol = 1e-10, int steps = 4096);

}  // namespace bonnet

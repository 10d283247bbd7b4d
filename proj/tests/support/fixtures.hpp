#pragma once

// Shared fixtures and property residuals for the test suites and the acceptance run.

#include <memory>
#include <vector>

#include "bonnet/bonnet_pair.hpp"
#include "bonnet/discrete.hpp"
#include "bonnet/periodicity.hpp"
#include "bonnet/spherical.hpp"

namespace bonnet::testing {

inline constexpr double kLambda = 0.3205128205;
inline constexpr double kOmega = 0.3890180475;
inline constexpr double kLambda0 = 0.354729892522;

// reference 3-fold and 4-fold sphere parameters
inline constexpr double kS1Three = -3.601381552, kDeltaThree = 1.897366596, kS2Three = 0.5965202011;
inline constexpr double kS1Four = -3.13060628, kDeltaFour = 1.61245155, kS2Four = 0.5655771591;

// reference Fourier family coefficients A, B, C
inline const std::vector<double> kFourier{1.44531765156, 1.33527652772, 1.05005399924};

// A closed torus and its Bonnet pair, with the frame covering 2k periods.
struct Torus {
    std::unique_ptr<PlanarFamily> fam;
    std::shared_ptr<const Reparam> rep;
    std::unique_ptr<FrameCurve> frame;
    std::unique_ptr<IsothermicSurface> surf;
    std::unique_ptr<BonnetAssembly> pair;
    int k = 0;
    SphericalSolveResult solve;  // spherical cases only

    double period() const { return rep->period(); }
    double v_span() const { return k * rep->period(); }
};

const Torus& torus_three();          // solved 3-fold spherical
const Torus& torus_four();           // solved 4-fold spherical
const Torus& torus_fourier();        // reference Fourier coefficients, not re-solved
Torus make_spherical(int k, double s1);
Torus make_fourier(const std::vector<double>& coeffs, int k);

// sample f on an n x m grid over one torus (u over 2 pi, v over k V)
DiscreteNet sample_net(const Torus& t, int n, int m);

// random exactly isothermic quad (vertices on a circle with cross ratio -1)
std::array<Vec3, 4> random_isothermic_quad(unsigned seed);  // f, f1, f12, f2

// property residuals (maxima over deterministic samples)
double theta_quasi_periodicity(const RhombicLattice& lat);  // relative
double theta_shift_identity(const RhombicLattice& lat);     // theta2(z) - theta1(z + pi/2)
double theta_conjugation(const RhombicLattice& lat);        // conj theta1(z) - e^{-i pi/4} theta1(conj z)
double wronskian_variation(const LameData& lame);
double riccati_residual(const PlanarFamily& fam, double wmin, double wmax);
double hw_squared_residual(const PlanarFamily& fam, double wmin, double wmax);
double harmonic_residual(const PlanarFamily& fam, double wmin, double wmax);
double cauchy_riemann_residual(const PlanarFamily& fam, double wmin, double wmax);
double frame_unit_defect(const FrameCurve& fc);
double max_abs_wprime(const Reparam& rep, int samples = 4096);
// h_uu + h_vv + pq, p_v - h_v q, q_u - h_u p on the surface
double integrability_residual(const IsothermicSurface& surf, double v_span);

}  // namespace bonnet::testing

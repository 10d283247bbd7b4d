#pragma once

// Jacobi theta functions on the lattice spanned by pi and pi*tau, in the
// Whittaker-Watson normalization, for rhombic tau = 1/2 + i*lambda.

#include <vector>

#include "bonnet/quat.hpp"

namespace bonnet {

class RhombicLattice {
public:
    explicit RhombicLattice(double lambda, int min_terms = 24);

    double lambda() const { return lambda_; }
    cplx tau() const { return {0.5, lambda_}; }
    cplx nome() const { return q_; }
    int terms() const { return n_; }

    // d^deriv/dz^deriv theta_kind(z), kind in 1..4, deriv in 0..3.
    cplx theta(int kind, cplx z, int deriv = 0) const;

    cplx theta1(cplx z, int d = 0) const { return theta(1, z, d); }
    cplx theta2(cplx z, int d = 0) const { return theta(2, z, d); }

    // theta_1 and theta_2 are e^{i pi/8} times a function that is real on the real axis.
    static cplx phase() { return {0.92387953251128674, 0.38268343236508978}; }
    double theta_real(int kind, double x, int deriv = 0) const { return (theta(kind, x, deriv) * std::conj(phase())).real(); }

    // Distance from z to the nearest lattice point m*pi + n*pi*tau.
    double lattice_distance(cplx z) const;

private:
    double lambda_;
    cplx q_;
    int n_;
    std::vector<cplx> half_;  // q^{(n+1/2)^2}
    std::vector<cplx> full_;  // q^{n^2}
};

struct CriticalOmega {
    double omega;
    double lambda;
};

// The unique omega in (0, pi/4) with theta_2'(omega) = 0. Requires 0 < lambda < lambda_0.
CriticalOmega critical_omega(const RhombicLattice& lat);

// Root of theta_2''(0 | 1/2 + i lambda) = 0.
double lambda0();

}  // namespace bonnet

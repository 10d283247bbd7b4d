#pragma once

// Real Lame coefficients U, U1 on the rhombic lattice and the cubic Q3 of the
// planar family.

#include <array>

#include "bonnet/theta.hpp"

namespace bonnet {

class LameData {
public:
    explicit LameData(double lambda);

    const RhombicLattice& lattice() const { return lat_; }
    double omega() const { return omega_; }
    double lambda() const { return lat_.lambda(); }

    // deriv in 0..2
    double U(double u, int deriv = 0) const;
    double U1(double u, int deriv = 0) const;

    double U_omega() const { return Uw_; }
    double Up_omega() const { return Upw_; }
    double U1p_omega() const { return U1pw_; }
    double U2_at_omega() const { return U2w_; }
    double R() const { return R_; }
    double s0() const { return s0_; }
    double K() const { return K_; }

    // Q3(s) = 2U1'(w)s^3 - U2(w)s^2 - 2U'(w)s - U(w)^2, highest degree first.
    const std::array<double, 4>& q3_coeffs() const { return q3_; }
    double q3(double s) const;
    double q3_prime(double s) const;

    // Cached theta values used by the surface formulas.
    cplx theta1p0() const { return t1p0_; }
    cplx theta2_omega() const { return t2w_; }
    cplx theta2pp_omega() const { return t2ppw_; }

private:
    double quotient(cplx shift, double sign, double u, int deriv) const;

    RhombicLattice lat_;
    double omega_;
    cplx t1p0_, t2w_, t2ppw_;
    double K_;
    double Uw_, Upw_, U1pw_, U2w_, R_, s0_;
    std::array<double, 4> q3_;
};

}  // namespace bonnet

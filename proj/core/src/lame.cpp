#include "bonnet/lame.hpp"

#include <cmath>
#include <numbers>

#include "bonnet/errors.hpp"

namespace bonnet {

LameData::LameData(double lambda) : lat_(lambda), omega_(critical_omega(lat_).omega) {
    t1p0_ = lat_.theta1(0.0, 1);
    t2w_ = lat_.theta2(omega_);
    t2ppw_ = lat_.theta2(omega_, 2);
    K_ = (t1p0_ / (2.0 * t2w_)).real();
    Uw_ = U(omega_);
    Upw_ = U(omega_, 1);
    U1pw_ = U1(omega_, 1);
    U2w_ = U(omega_, 2) / Uw_;
    R_ = -1.0 / Uw_;
    const cplx t = lat_.theta1(omega_) / lat_.theta2(0.0);
    s0_ = (t * t).real();
    q3_ = {2 * U1pw_, -U2w_, -2 * Upw_, -Uw_ * Uw_};
}

// sign * K * theta1(u + shift) / theta2(u) and its u-derivatives
double LameData::quotient(cplx shift, double sign, double u, int deriv) const {
    if (deriv < 0 || deriv > 2) throw Error(ErrorCode::invalid_argument, "Lame coefficient: deriv must be 0..2");
    if (lat_.lattice_distance(cplx(u - std::numbers::pi / 2, 0)) < 1e-6)
        throw Error(ErrorCode::pole_proximity, "Lame coefficient evaluated at a zero of theta_2");
    const cplx z = u + shift;
    const cplx n0 = lat_.theta1(z), n1 = lat_.theta1(z, 1), n2 = lat_.theta1(z, 2);
    const cplx d0 = lat_.theta2(u), d1 = lat_.theta2(u, 1), d2 = lat_.theta2(u, 2);
    const cplx f0 = n0 / d0;
    cplx r = f0;
    if (deriv >= 1) {
        const cplx f1 = (n1 - f0 * d1) / d0;
        r = f1;
        if (deriv == 2) r = (n2 - 2.0 * f1 * d1 - f0 * d2) / d0;
    }
    return sign * K_ * r.real();
}

double LameData::U(double u, int deriv) const { return quotient(omega_, -1.0, u, deriv); }
double LameData::U1(double u, int deriv) const { return quotient(-omega_, 1.0, u, deriv); }

double LameData::q3(double s) const { return ((q3_[0] * s + q3_[1]) * s + q3_[2]) * s + q3_[3]; }
double LameData::q3_prime(double s) const { return (3 * q3_[0] * s + 2 * q3_[1]) * s + q3_[2]; }

}  // namespace bonnet

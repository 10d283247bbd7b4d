#include "bonnet/quat.hpp"

#include <stdexcept>

namespace bonnet {

Vec3 conjugate_by(const Vec3& x, const Quat& g) {
    if (std::abs(g.norm() - 1.0) > 1e-12) throw std::domain_error("conjugate_by: quaternion is not a unit");
    return (g * Quat(x) * g.conj()).vec();
}

Quat axis_angle(const Vec3& axis, double angle) {
    Vec3 a = normalized(axis) * std::sin(0.5 * angle);
    return {std::cos(0.5 * angle), a.x, a.y, a.z};
}

}  // namespace bonnet

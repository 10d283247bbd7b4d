#pragma once

// Quaternions H = span{1, i, j, k}, with R^3 identified with Im H and
// C identified with span{1, i}.

#include <cmath>
#include <complex>

namespace bonnet {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0, y = 0, z = 0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

struct Quat {
    double w = 0, x = 0, y = 0, z = 0;  // w + x i + y j + z k

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr explicit Quat(double s) : w(s) {}
    constexpr explicit Quat(const Vec3& v) : w(0), x(v.x), y(v.y), z(v.z) {}

    static constexpr Quat one() { return {1, 0, 0, 0}; }
    static constexpr Quat i() { return {0, 1, 0, 0}; }
    static constexpr Quat j() { return {0, 0, 1, 0}; }
    static constexpr Quat k() { return {0, 0, 0, 1}; }

    constexpr Quat operator+(const Quat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quat operator-(const Quat& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quat operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quat operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
    constexpr Quat operator/(double s) const { return {w / s, x / s, y / s, z / s}; }
    constexpr Quat operator*(const Quat& q) const {
        return {w * q.w - x * q.x - y * q.y - z * q.z,
                w * q.x + x * q.w + y * q.z - z * q.y,
                w * q.y - x * q.z + y * q.w + z * q.x,
                w * q.z + x * q.y - y * q.x + z * q.w};
    }
    Quat& operator+=(const Quat& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }

    constexpr Quat conj() const { return {w, -x, -y, -z}; }
    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quat inv() const { return conj() / norm2(); }
    constexpr Vec3 vec() const { return {x, y, z}; }
};

inline constexpr Quat operator*(double s, const Quat& q) { return q * s; }

inline constexpr Quat qmul(const Quat& p, const Quat& q) { return p * q; }

// Im_H: drop the real part.
inline constexpr Vec3 imh(const Quat& q) { return q.vec(); }

// Im_C of a + b i.
inline double imc(cplx z) { return z.imag(); }

// a + b i as a quaternion in span{1, i}.
inline constexpr Quat from_complex(cplx z) { return {z.real(), z.imag(), 0, 0}; }

// z j = a j + b k for z = a + b i.
inline constexpr Quat complex_j(cplx z) { return {0, 0, z.real(), z.imag()}; }

// z k = a k - b j for z = a + b i.
inline constexpr Quat complex_k(cplx z) { return {0, 0, -z.imag(), z.real()}; }

// Rotation of x by the unit quaternion g: g x g^{-1}.
// Throws std::domain_error when |g| differs from 1 by more than 1e-12.
Vec3 conjugate_by(const Vec3& x, const Quat& g);

// g^{-1} x g for unit g, without the unit check. This is the form used by frames.
inline Vec3 frame_apply(const Quat& g, const Vec3& x) { return (g.conj() * Quat(x) * g).vec(); }
inline Vec3 frame_apply(const Quat& g, const Quat& x) { return (g.conj() * x * g).vec(); }

// Axis-angle to unit quaternion cos(t/2) + sin(t/2) a.
Quat axis_angle(const Vec3& axis, double angle);

}  // namespace bonnet

#pragma once

#include <cmath>

#include "scl/error.hpp"
#include "scl/tolerances.hpp"
#include "scl/vec.hpp"

namespace scl {

// Quaternion a + b i + c j + d k. Unit quaternions form the double cover of SO(3).
struct Quat {
    double a = 1, b = 0, c = 0, d = 0;

    constexpr Quat() = default;
    constexpr Quat(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static constexpr Quat pure(const Vec3& v) { return {0, v.x, v.y, v.z}; }

    constexpr Vec3 imag() const { return {b, c, d}; }

    constexpr Quat operator+(const Quat& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Quat operator-(const Quat& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Quat operator-() const { return {-a, -b, -c, -d}; }
    constexpr Quat operator*(double s) const { return {a * s, b * s, c * s, d * s}; }

    constexpr Quat conj() const { return {a, -b, -c, -d}; }
    constexpr double norm2() const { return a * a + b * b + c * c + d * d; }
    double norm() const { return std::sqrt(norm2()); }

    Quat normalized() const {
        double n = norm();
        return {a / n, b / n, c / n, d / n};
    }

    // Inverse of a unit quaternion.
    constexpr Quat unit_inverse() const { return conj(); }
};

inline constexpr double dot(const Quat& p, const Quat& q) {
    return p.a * q.a + p.b * q.b + p.c * q.c + p.d * q.d;
}

inline double dist(const Quat& p, const Quat& q) { return (p - q).norm(); }

// Hamilton product.
inline constexpr Quat quat_mul(const Quat& p, const Quat& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
}

inline constexpr Quat operator*(const Quat& p, const Quat& q) { return quat_mul(p, q); }

// exp of a pure-imaginary quaternion: cos|v| + (v/|v|) sin|v|; exp(0) = 1.
inline Quat quat_exp_imaginary(const Quat& v) {
    if (std::abs(v.a) > 1e-12) fail(errc::out_of_domain, "exp argument must be pure imaginary");
    double t = norm(v.imag());
    if (t == 0) return {1, 0, 0, 0};
    double s = std::sin(t) / t;
    return {std::cos(t), v.b * s, v.c * s, v.d * s};
}

inline Quat quat_exp_imaginary(const Vec3& v) { return quat_exp_imaginary(Quat::pure(v)); }

inline constexpr Quat quat_i{0, 1, 0, 0};
inline constexpr Quat quat_j{0, 0, 1, 0};
inline constexpr Quat quat_k{0, 0, 0, 1};

} // namespace scl

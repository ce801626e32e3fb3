#pragma once

#include <cmath>
#include <utility>

#include "scl/quat.hpp"
#include "scl/vec.hpp"

namespace scl {

// Special orthogonal 3x3 matrix.
struct Rotation {
    Mat3 m;

    Rotation() = default;
    explicit Rotation(const Mat3& mm) : m(mm) {}

    static Rotation identity() { return Rotation(Mat3::identity()); }

    Vec3 operator*(const Vec3& v) const { return m * v; }
    Rotation operator*(const Rotation& o) const { return Rotation(m * o.m); }
    Rotation inverse() const { return Rotation(m.transposed()); }
};

inline bool is_rotation(const Mat3& m, double eps = tol::rotation) {
    Mat3 g = m.transposed() * m;
    Mat3 i = Mat3::identity();
    return frobenius(g - i) < 10 * eps && std::abs(m.det() - 1.0) < 10 * eps;
}

// The double-cover projection Pi: S^3 -> SO(3),
//
//   Pi(a+bi+cj+dk) = [ a^2+b^2-c^2-d^2   -2ad+2bc        2ac+2bd
//                      2ad+2bc            a^2-b^2+c^2-d^2 -2ab+2cd
//                     -2ac+2bd            2ab+2cd         a^2-b^2-c^2+d^2 ].
inline Rotation pi_project(const Quat& z) {
    if (std::abs(z.norm() - 1.0) > tol::unit_quat)
        fail(errc::non_unit, "pi_project requires a unit quaternion");
    const double a = z.a, b = z.b, c = z.c, d = z.d;
    Mat3 m;
    m.m = {a * a + b * b - c * c - d * d, -2 * a * d + 2 * b * c, 2 * a * c + 2 * b * d,
           2 * a * d + 2 * b * c, a * a - b * b + c * c - d * d, -2 * a * b + 2 * c * d,
           -2 * a * c + 2 * b * d, 2 * a * b + 2 * c * d, a * a - b * b - c * c + d * d};
    return Rotation(m);
}

namespace detail {

// Sign convention for the returned pair: the first component has its leading
// nonzero coefficient (in a,b,c,d order) nonnegative.
inline Quat canonical_sign(const Quat& q) {
    const double v[4] = {q.a, q.b, q.c, q.d};
    for (double x : v) {
        if (x > 0) return q;
        if (x < 0) return -q;
    }
    return q;
}

} // namespace detail

// Both preimages of Q under Pi, as {q, -q} with deterministic ordering.
// Uses the trace / largest-diagonal branch to avoid cancellation near pi rotations.
inline std::pair<Quat, Quat> rot_to_quat(const Rotation& Q) {
    if (!is_rotation(Q.m)) fail(errc::not_a_rotation, "matrix is not special orthogonal");
    const Mat3& m = Q.m;
    double tr = m(0, 0) + m(1, 1) + m(2, 2);
    Quat q;
    if (tr > 0) {
        double s = std::sqrt(tr + 1.0) * 2;
        q = {0.25 * s, (m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s, (m(1, 0) - m(0, 1)) / s};
    } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
        double s = std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2)) * 2;
        q = {(m(2, 1) - m(1, 2)) / s, 0.25 * s, (m(0, 1) + m(1, 0)) / s, (m(0, 2) + m(2, 0)) / s};
    } else if (m(1, 1) >= m(2, 2)) {
        double s = std::sqrt(1.0 - m(0, 0) + m(1, 1) - m(2, 2)) * 2;
        q = {(m(0, 2) - m(2, 0)) / s, (m(0, 1) + m(1, 0)) / s, 0.25 * s, (m(1, 2) + m(2, 1)) / s};
    } else {
        double s = std::sqrt(1.0 - m(0, 0) - m(1, 1) + m(2, 2)) * 2;
        q = {(m(1, 0) - m(0, 1)) / s, (m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s, 0.25 * s};
    }
    q = detail::canonical_sign(q.normalized());
    return {q, -q};
}

// Rotation by `angle` about a unit axis.
inline Rotation axis_rotation(const Vec3& axis, double angle) {
    return pi_project(quat_exp_imaginary(axis * (angle / 2)));
}

} // namespace scl

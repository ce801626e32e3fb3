#pragma once

// Test-only fixtures. The shared corpus and the brute-force oracle live in the
// library headers (the acceptance suite runs them too); what stays here is the
// engineered degenerate geometry.

#include <vector>

#include "scl/corpus.hpp"
#include "scl/oracle.hpp"

namespace fixtures {

using namespace scl;

using scl::brute_force_double_points;
using scl::oracle_fixture_set;
using scl::perturbed_circle_curve;
using scl::spherical_limacon;

// Closed curve with a non-generic triple point: three branches through one
// image point, two of them with parallel tangents (plus two ordinary crossings
// elsewhere). Planar model: p(th) = sin(3 th) (cos psi, sin psi) with a warped
// angle psi(th), central-projected to the sphere.
inline CurvePtr nongeneric_triple_fixture() {
    const double cc = 0.3;
    const double aa = (2 * pi / 3 - 1.5 * cc) * 2 / std::sqrt(3.0);
    const double shift = 0.15;
    const int n = 2048;
    node::Sampled s;
    s.n = n;
    s.p.resize(n);
    s.d1.resize(n);
    s.d2.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = double(i) / (n - 1);
        double th = pi * (t + shift);
        double psi = th + aa * std::sin(2 * th) + cc * (1 - std::cos(4 * th));
        double dpsi = 1 + 2 * aa * std::cos(2 * th) + 4 * cc * std::sin(4 * th);
        double ddpsi = -4 * aa * std::sin(2 * th) + 16 * cc * std::cos(4 * th);
        double r = std::sin(3 * th), dr = 3 * std::cos(3 * th), ddr = -9 * std::sin(3 * th);
        double cp = std::cos(psi), sp = std::sin(psi);
        double px = r * cp, py = r * sp;
        double dpx = dr * cp - r * sp * dpsi;
        double dpy = dr * sp + r * cp * dpsi;
        double ddpx = ddr * cp - 2 * dr * sp * dpsi - r * cp * dpsi * dpsi - r * sp * ddpsi;
        double ddpy = ddr * sp + 2 * dr * cp * dpsi - r * sp * dpsi * dpsi + r * cp * ddpsi;
        const double k = 0.8, dth = pi;
        Vec3 u{k * px, k * py, 1};
        Vec3 du{k * dpx * dth, k * dpy * dth, 0};
        Vec3 ddu{k * ddpx * dth * dth, k * ddpy * dth * dth, 0};
        Jet2 j = normalize_jet(u, du, ddu);
        s.p[i] = j.p;
        s.d1[i] = j.v;
        s.d2[i] = j.a;
    }
    return standardize(sampled_raw(std::move(s)));
}

// Alias kept for the geomscan tests.
inline CurvePtr perturbed_circle(unsigned seed, double amp = 0.08, int harmonics = 4) {
    return perturbed_circle_curve(seed, amp, harmonics);
}

} // namespace fixtures

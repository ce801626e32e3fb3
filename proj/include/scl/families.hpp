#pragma once

// The concrete map families whose degrees the suite verifies.

#include <memory>

#include "scl/classify.hpp"
#include "scl/curve.hpp"
#include "scl/degree.hpp"
#include "scl/frame.hpp"

namespace scl {

// The lift family f1~(s1, s2, t) in S^3. Evaluations at a fixed (s1,s2) share
// one tracked lift, cached per thread.
class F1LiftMap {
  public:
    explicit F1LiftMap(int lift_samples = 192) : lift_samples_(lift_samples) {}

    Quat operator()(double s1, double s2, double t) const {
        thread_local double cs1 = -1, cs2 = -1;
        thread_local CurvePtr curve;
        thread_local LiftResult lift;
        if (cs1 != s1 || cs2 != s2 || !curve) {
            cs1 = s1;
            cs2 = s2;
            curve = make_generator_f1(s1, s2);
            lift = lift_curve(curve, lift_samples_);
        }
        if (t <= 0) return {1, 0, 0, 0};
        // continue the tracked branch from the last node before t
        size_t lo = 0, hi = lift.ts.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            (lift.ts[mid] <= t ? lo : hi) = mid;
        }
        return detail::nearest_preimage(frame_at(curve, t), lift.lift[lo]);
    }

  private:
    int lift_samples_;
};

// g1 composed with f1 as a map from the (s1,s2) rectangle to S^2.
class G1F1Map {
  public:
    explicit G1F1Map(double rho_bar = 0.05, int scan_samples = 1024)
        : rho_bar_(rho_bar), scan_samples_(scan_samples) {}

    Vec3 operator()(double s1, double s2) const {
        G1Options opt;
        opt.rho_bar = rho_bar_;
        opt.n_samples = scan_samples_;
        return g1_eval(make_generator_f1(s1, s2), opt);
    }

  private:
    double rho_bar_;
    int scan_samples_;
};

// Analytic degree fixture on the same identified (s1,s2,t) domain: wraps S^3
// once via exp(pi l(s) 2t) for t <= 1/2 and a fixed geodesic return path after.
// A generic value has a single preimage, so |deg| = 1.
inline Quat exp_wrap_map(double s1, double s2, double t) {
    Vec3 l{std::sin(s2) * std::cos(s1), std::sin(s2) * std::sin(s1), std::cos(s2)};
    if (t <= 0.5) return quat_exp_imaginary(l * (pi * 2 * t));
    // fixed return path from -1 to 1: exp(pi (1-u) j), u = 2t - 1
    double u = 2 * t - 1;
    return quat_exp_imaginary(Vec3{0, pi * (1 - u), 0});
}

} // namespace scl

#pragma once

// Numeric tolerances used across the library. The underlying theory is exact;
// these constants make its open/closed conditions decidable in floating point.

namespace scl::tol {

inline constexpr double unit_quat = 1e-9;       // |norm - 1| bound for unit quaternion inputs
inline constexpr double rotation = 1e-10;       // orthogonality / det for Rotation inputs
inline constexpr double round_trip = 1e-8;      // rotation <-> quaternion round trip
inline constexpr double curve_unit = 1e-10;     // |gamma(t)| - 1 on evaluated curves
inline constexpr double junction = 1e-8;        // endpoint match required by concat
inline constexpr double junction_dir = 1e-6;    // tangent-direction match at convex junctions
inline constexpr double immersion = 1e-9;       // minimum |gamma'(t)|
inline constexpr double lift_project = 1e-7;    // |Pi(lift) - frame| per sample
inline constexpr double snap_endpoint = 1e-6;   // snapping lift endpoints to exact values
inline constexpr double convexity_det = 1e-10;  // det(gamma,gamma',gamma'') > this => convex
inline constexpr double double_point = 1e-7;    // |gamma(t0)-gamma(t1)| after refinement
inline constexpr double refine_target = 1e-10;  // squared-distance refinement target
inline constexpr double dedupe = 1e-6;          // parameter-space dedupe of double points
inline constexpr double tangency = 1e-6;        // |t0_hat x t1_hat| below => self-tangency
inline constexpr double cluster_image = 3e-6;   // spherical clustering of multi-points
inline constexpr double hull_eps = 1e-9;        // visibility epsilon for the incremental hull
inline constexpr double hull_boundary = 1e-7;   // distance-to-facet for boundary flags
inline constexpr double axis_match = 1e-9;      // Qe1 == e1 style case splits
inline constexpr double flower_visit = 1e-6;    // gamma(t_i) == e1 in the flower detector

} // namespace scl::tol

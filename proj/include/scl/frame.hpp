#pragma once

#include <cmath>
#include <vector>

#include "scl/curve.hpp"
#include "scl/error.hpp"
#include "scl/quat.hpp"
#include "scl/rotation.hpp"

namespace scl {

// Gamma(t): columns (gamma, unit tangent, gamma x unit tangent).
inline Rotation frame_at(const CurvePtr& c, double t) { return frame_from_jet(eval2(c, t)); }

// Continuous quaternion lift of the frame path, Gamma~(0) = 1 for curves that
// start at the standard frame (e1, e2). For other start frames the lift starts
// at the deterministic rot_to_quat representative of Gamma(0).
struct LiftResult {
    std::vector<double> ts;
    std::vector<Rotation> frames;
    std::vector<Quat> lift;
    Quat endpoint;
};

namespace detail {

inline Quat nearest_preimage(const Rotation& f, const Quat& prev) {
    auto [q, mq] = rot_to_quat(f);
    return dot(q, prev) >= 0 ? q : mq;
}

} // namespace detail

// Branch tracking by nearest quaternion, refined by interval doubling until every
// consecutive inner product exceeds cos(pi/4).
inline LiftResult lift_curve(const CurvePtr& c, int n_samples = 256) {
    if (n_samples < 64) n_samples = 64;
    const double gate = std::cos(pi / 4);
    const size_t cap = size_t(1) << 20;

    struct Node {
        double t;
        Rotation f;
        Quat q;
    };
    std::vector<Node> nodes;
    nodes.reserve(n_samples + 1);

    Rotation f0 = frame_at(c, 0.0);
    Quat q0 = rot_to_quat(f0).first;
    nodes.push_back({0.0, f0, q0});
    for (int i = 1; i <= n_samples; ++i) {
        double t = double(i) / n_samples;
        Rotation f = frame_at(c, t);
        nodes.push_back({t, f, detail::nearest_preimage(f, nodes.back().q)});
    }

    // refine gaps that fail the continuity gate
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Node> out;
        out.reserve(nodes.size() * 2);
        out.push_back(nodes.front());
        for (size_t i = 1; i < nodes.size(); ++i) {
            if (dot(out.back().q, nodes[i].q) <= gate) {
                double tm = 0.5 * (out.back().t + nodes[i].t);
                Rotation fm = frame_at(c, tm);
                out.push_back({tm, fm, detail::nearest_preimage(fm, out.back().q)});
                // re-track the right node against the inserted midpoint
                Node right = nodes[i];
                right.q = detail::nearest_preimage(right.f, out.back().q);
                out.push_back(right);
                changed = true;
            } else {
                out.push_back(nodes[i]);
            }
        }
        nodes = std::move(out);
        if (nodes.size() > cap) fail(errc::refinement_exceeded, "lift needed more than 2^20 samples");
    }

    LiftResult r;
    r.ts.reserve(nodes.size());
    r.frames.reserve(nodes.size());
    r.lift.reserve(nodes.size());
    for (auto& nd : nodes) {
        r.ts.push_back(nd.t);
        r.frames.push_back(nd.f);
        r.lift.push_back(nd.q);
    }
    r.endpoint = r.lift.back();
    return r;
}

// Lift value at a single parameter (the path must be tracked from 0 anyway).
inline Quat lift_at(const CurvePtr& c, double t, int n_samples = 256) {
    if (t <= 0) return rot_to_quat(frame_at(c, 0.0)).first;
    Rotation f = frame_at(c, 0.0);
    Quat q = rot_to_quat(f).first;
    int n = std::max(n_samples, 64);
    Quat prev = q;
    for (int i = 1; i <= n; ++i) {
        double u = t * double(i) / n;
        prev = detail::nearest_preimage(frame_at(c, u), prev);
    }
    return prev;
}

// Endpoint quaternion z of the lift; closed curves (frame(1) = I) snap to an
// exact +1/-1, other endpoints snap to the deterministic rot_to_quat pair.
inline Quat component_sign(const CurvePtr& c, int n_samples = 256) {
    LiftResult lr = lift_curve(c, n_samples);
    Quat z = lr.endpoint;
    const Quat one{1, 0, 0, 0};
    if (dist(z, one) < tol::snap_endpoint) return one;
    if (dist(z, -one) < tol::snap_endpoint) return {-1, 0, 0, 0};
    auto [q, mq] = rot_to_quat(lr.frames.back());
    if (dist(z, q) < tol::snap_endpoint) return q;
    if (dist(z, mq) < tol::snap_endpoint) return mq;
    return z;
}

} // namespace scl

#pragma once

// Brute-force double point oracle for the acceptance checks. Kept deliberately
// independent of the production detector: exhaustive O(N^2) pair enumeration
// instead of spatial hashing, and refinement through a different system
// (projections onto two fixed chord directions, plain Newton with
// finite-difference Jacobians, instead of the evolving-tangent stationarity).

#include <algorithm>
#include <vector>

#include "scl/corpus.hpp"
#include "scl/curve.hpp"
#include "scl/scan.hpp"

namespace scl {

struct OraclePair {
    double t0, t1;
};

inline std::vector<OraclePair> brute_force_double_points(const CurvePtr& c, int n) {
    std::vector<Vec3> p(n + 1);
    for (int i = 0; i <= n; ++i) p[i] = position(c, double(i) / n);
    bool closed = dist(p[0], p[n]) < 1e-9;

    double max_chord = 0;
    for (int i = 0; i < n; ++i) max_chord = std::max(max_chord, dist(p[i], p[i + 1]));
    const double near_tol = 8 * max_chord * max_chord + 1e-9;

    auto refine = [&](double t0, double t1, const Vec3& w1, const Vec3& w2, double& out0,
                      double& out1) {
        const double h = 1e-7;
        for (int it = 0; it < 40; ++it) {
            auto G = [&](double a, double b) {
                Vec3 d = position(c, std::clamp(a, 0.0, 1.0)) - position(c, std::clamp(b, 0.0, 1.0));
                return std::pair<double, double>{dot(d, w1), dot(d, w2)};
            };
            auto [g1, g2] = G(t0, t1);
            if (g1 * g1 + g2 * g2 < 1e-28) break;
            auto [a1, a2] = G(t0 + h, t1);
            auto [b1, b2] = G(t0, t1 + h);
            double J11 = (a1 - g1) / h, J12 = (b1 - g1) / h;
            double J21 = (a2 - g2) / h, J22 = (b2 - g2) / h;
            double den = J11 * J22 - J12 * J21;
            if (std::abs(den) < 1e-14) break;
            double dt0 = (-g1 * J22 + g2 * J12) / den;
            double dt1 = (-g2 * J11 + g1 * J21) / den;
            double cap = 2.0 / n;
            double m = std::max(std::abs(dt0), std::abs(dt1));
            if (m > cap) {
                dt0 *= cap / m;
                dt1 *= cap / m;
            }
            t0 += dt0;
            t1 += dt1;
            if (closed) {
                t0 -= std::floor(t0);
                t1 -= std::floor(t1);
            }
        }
        out0 = t0;
        out1 = t1;
    };

    std::vector<OraclePair> out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            if (closed && i == 0 && j == n - 1) continue;
            bool crossing = scandetail::arcs_cross(p[i], p[i + 1], p[j], p[j + 1]);
            // shallow crossings may be missed by the chord polyline; also try
            // pairs whose chords pass within the sagitta allowance
            if (!crossing &&
                scandetail::segment_distance(p[i], p[i + 1], p[j], p[j + 1]) > near_tol)
                continue;
            Vec3 w1 = normalized(p[i + 1] - p[i]);
            Vec3 w2 = normalized(p[j + 1] - p[j]);
            if (norm(cross(w1, w2)) < 1e-3) continue; // tangential seeds are not refinable here
            double t0, t1;
            refine((i + 0.5) / n, (j + 0.5) / n, w1, w2, t0, t1);
            if (norm2(position(c, t0) - position(c, t1)) > 1e-16) continue;
            double gap = std::abs(t1 - t0);
            if (closed) gap = std::min(gap, 1.0 - gap);
            if (gap < 1e-4) continue;
            out.push_back({std::min(t0, t1), std::max(t0, t1)});
        }
    }
    std::vector<OraclePair> ded;
    for (auto& q : out) {
        bool dup = false;
        for (auto& r : ded)
            if (std::abs(q.t0 - r.t0) < 1e-5 && std::abs(q.t1 - r.t1) < 1e-5) dup = true;
        if (!dup) ded.push_back(q);
    }
    return ded;
}

// Deterministic fixture set for the oracle-equivalence checks: perturbed circles
// whose crossings are all decently transversal and well separated (tangential
// contacts are ill-posed for any localizer and are covered by their own fixtures).
inline std::vector<CurvePtr> oracle_fixture_set(int count, int scan_samples = 1024) {
    std::vector<CurvePtr> out;
    for (unsigned seed = 1; out.size() < size_t(count) && seed < 200; ++seed) {
        auto c = perturbed_circle_curve(seed, 0.35, 5);
        ScanOptions opt;
        opt.n_samples = scan_samples;
        opt.throw_on_degenerate = false;
        bool degen = false;
        auto dps = find_double_points(c, opt, &degen);
        if (degen) continue;
        bool good = !dps.empty() && dps.size() <= 8;
        for (auto& dp : dps) {
            Vec3 v0 = normalized(eval2(c, dp.t0).v), v1 = normalized(eval2(c, dp.t1).v);
            if (norm(cross(v0, v1)) < 0.25) good = false;
        }
        for (size_t a = 0; a < dps.size() && good; ++a)
            for (size_t b = a + 1; b < dps.size(); ++b)
                if (std::abs(dps[a].t0 - dps[b].t0) < 5e-3 && std::abs(dps[a].t1 - dps[b].t1) < 5e-3)
                    good = false;
        if (good) out.push_back(c);
    }
    return out;
}

} // namespace scl

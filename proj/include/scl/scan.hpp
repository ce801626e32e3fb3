#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "scl/curve.hpp"
#include "scl/error.hpp"
#include "scl/hull.hpp"
#include "scl/vec.hpp"

namespace scl {

struct DoublePoint {
    double t0 = 0, t1 = 0;      // t0 < t1
    bool tangency = false;      // tangents parallel at the two visits
    bool generic = true;        // for tangencies: curvatures distinct
    bool at_basepoint = false;  // a visit parameter sits at the closed-curve basepoint
    double sep = 0;             // |gamma(t0) - gamma(t1)| after refinement
    Vec3 image;
};

struct TriplePoint {
    double t0 = 0, t1 = 0, t2 = 0;
    bool generic = true;
    Vec3 image;
};

struct Arc {
    double t_minus = 0, t_plus = 0;
    bool positive = false;
    bool simple = false;
};

struct CurvatureProfile {
    std::vector<double> dets;
    double curvature_min = 0;  // min of det/|v|^3
    double det_min = 0;
    bool locally_convex = false;
};

struct CurveDiagnostics {
    CurvatureProfile curvature;
    bool locally_convex = false;
    std::vector<DoublePoint> double_points;
    std::vector<TriplePoint> triple_points;
    std::vector<Arc> arcs;
    bool convex = false;
    bool generic = false;
    bool degenerate_overlap = false;  // scan bailed out on overlapping strands
    bool closed = false;
    int n_samples = 0;
};

inline double geodesic_curvature(const Jet2& j) {
    double s = norm(j.v);
    return det3(j.p, j.v, j.a) / (s * s * s);
}

inline CurvatureProfile geodesic_curvature_profile(const CurvePtr& c, int n_samples = 1024) {
    CurvatureProfile out;
    out.dets.resize(n_samples);
    out.curvature_min = 1e300;
    out.det_min = 1e300;
    for (int i = 0; i < n_samples; ++i) {
        Jet2 j = eval2(c, double(i) / (n_samples - 1));
        double s = norm(j.v);
        if (s <= tol::immersion) fail(errc::not_immersed, "curve tangent vanishes");
        double d = det3(j.p, j.v, j.a);
        out.dets[i] = d;
        out.det_min = std::min(out.det_min, d);
        out.curvature_min = std::min(out.curvature_min, d / (s * s * s));
    }
    out.locally_convex = out.det_min > tol::convexity_det;
    return out;
}

inline bool is_locally_convex(const CurvePtr& c, int n_samples = 1024) {
    return geodesic_curvature_profile(c, n_samples).locally_convex;
}

namespace scandetail {

// Detects a multiply-traversed circle: all samples on one circle within 1e-7
// and total swept angle beyond one turn.
inline bool multiply_traversed_circle(const std::vector<Vec3>& p) {
    const int n = int(p.size());
    Vec3 mean{0, 0, 0};
    for (auto& q : p) mean += q;
    mean = mean / double(n);
    // plane normal: smallest-variance direction via a few inverse-power steps
    // on the covariance; fall back to cross products for robustness
    Vec3 nrm{0, 0, 1};
    {
        Vec3 bestc{0, 0, 0};
        double bestl = -1;
        for (int i = 0; i < n; i += std::max(1, n / 16)) {
            Vec3 c = cross(p[i] - mean, p[(i + n / 3) % n] - mean);
            double l = norm(c);
            if (l > bestl) { bestl = l; bestc = c; }
        }
        if (bestl < 1e-14) return false;
        nrm = bestc / bestl;
    }
    double rmin = 1e300, rmax = -1e300;
    for (auto& q : p) {
        if (std::abs(dot(q - mean, nrm)) > 1e-7) return false;
        double r = norm(q - mean - nrm * dot(q - mean, nrm));
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    if (rmax - rmin > 1e-7 || rmax < 1e-9) return false;
    // swept angle around the axis
    Vec3 ax = normalized(cross(nrm, p[0] - mean));
    Vec3 ay = cross(nrm, ax);
    double total = 0, prev = 0;
    for (int i = 0; i < n; ++i) {
        Vec3 d = p[i] - mean;
        double ang = std::atan2(dot(d, ay), dot(d, ax));
        if (i) {
            double step = ang - prev;
            if (step > pi) step -= two_pi;
            if (step < -pi) step += two_pi;
            total += step;
        }
        prev = ang;
    }
    return std::abs(total) > two_pi + 0.2;
}

struct SegPair {
    int i, j;
    double dist;
    bool crossing;
};

// Min distance between 3D segments a0a1 and b0b1 (clamped closest points).
inline double segment_distance(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
    Vec3 u = a1 - a0, v = b1 - b0, w = a0 - b0;
    double A = dot(u, u), B = dot(u, v), C = dot(v, v), D = dot(u, w), E = dot(v, w);
    double den = A * C - B * B;
    double s, t;
    if (den < 1e-18) {
        s = 0;
        t = C > 0 ? E / C : 0;
    } else {
        s = (B * E - C * D) / den;
        t = (A * E - B * D) / den;
    }
    s = std::clamp(s, 0.0, 1.0);
    t = C > 0 ? std::clamp((B * s + E) / C, 0.0, 1.0) : std::clamp(t, 0.0, 1.0);
    s = A > 0 ? std::clamp((B * t - D) / A, 0.0, 1.0) : s;
    Vec3 pa = a0 + u * s, pb = b0 + v * t;
    return dist(pa, pb);
}

// Proper crossing test for the geodesic arcs subtended by two chords; sign
// tests carry an epsilon guard so nearly-collinear chord pairs fall through to
// the distance-based candidate path instead of registering noise crossings.
inline bool arcs_cross(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1,
                       double eps = 1e-15) {
    Vec3 n1 = cross(a0, a1), n2 = cross(b0, b1);
    double s_b0 = dot(n1, b0), s_b1 = dot(n1, b1);
    double s_a0 = dot(n2, a0), s_a1 = dot(n2, a1);
    if (std::abs(s_b0) < eps || std::abs(s_b1) < eps || std::abs(s_a0) < eps ||
        std::abs(s_a1) < eps)
        return false;
    return (s_b0 > 0) != (s_b1 > 0) && (s_a0 > 0) != (s_a1 > 0) &&
           dot(cross(n1, n2), cross(n1, n2)) > 1e-30;
}

} // namespace scandetail

struct ScanOptions {
    int n_samples = 2048;
    // candidate cap; beyond it the curve is treated as having overlapping strands
    int max_candidates = 4096;
    bool throw_on_degenerate = true;
};

// Chord-based double point detection with spatial hashing and Newton/LM refinement.
inline std::vector<DoublePoint> find_double_points(const CurvePtr& c, ScanOptions opt = {},
                                                   bool* degenerate_overlap = nullptr) {
    const int n = opt.n_samples;
    std::vector<Vec3> p(n + 1);
    for (int i = 0; i <= n; ++i) p[i] = position(c, double(i) / n);
    bool closed = dist(p[0], p[n]) < 1e-9;

    if (degenerate_overlap) *degenerate_overlap = false;

    if (closed && scandetail::multiply_traversed_circle({p.begin(), p.end() - 1})) {
        if (opt.throw_on_degenerate) fail(errc::degenerate, "multiply traversed circle");
        if (degenerate_overlap) *degenerate_overlap = true;
        return {};
    }

    const int m = n; // chords i -> i+1
    auto chord_end = [&](int i) -> const Vec3& { return p[i + 1]; };

    double max_chord = 0;
    for (int i = 0; i < m; ++i) max_chord = std::max(max_chord, dist(p[i], chord_end(i)));
    double cell = std::max(2.0 * max_chord, 1e-6);
    int gridn = std::max(1, int(2.0 / cell));
    cell = 2.0 / gridn;

    auto cell_key = [&](int ix, int iy, int iz) {
        return (int64_t(ix) * gridn + iy) * gridn + iz;
    };
    std::unordered_map<int64_t, std::vector<int>> grid;
    grid.reserve(size_t(m) * 2);
    auto cell_range = [&](const Vec3& a, const Vec3& b, int out[6]) {
        out[0] = std::clamp(int((std::min(a.x, b.x) + 1) / cell), 0, gridn - 1);
        out[1] = std::clamp(int((std::max(a.x, b.x) + 1) / cell), 0, gridn - 1);
        out[2] = std::clamp(int((std::min(a.y, b.y) + 1) / cell), 0, gridn - 1);
        out[3] = std::clamp(int((std::max(a.y, b.y) + 1) / cell), 0, gridn - 1);
        out[4] = std::clamp(int((std::min(a.z, b.z) + 1) / cell), 0, gridn - 1);
        out[5] = std::clamp(int((std::max(a.z, b.z) + 1) / cell), 0, gridn - 1);
    };
    for (int i = 0; i < m; ++i) {
        int r[6];
        cell_range(p[i], chord_end(i), r);
        for (int ix = r[0]; ix <= r[1]; ++ix)
            for (int iy = r[2]; iy <= r[3]; ++iy)
                for (int iz = r[4]; iz <= r[5]; ++iz) grid[cell_key(ix, iy, iz)].push_back(i);
    }

    // candidate chord pairs: crossing arcs, or chords closer than the local
    // sagitta allowance (per pair, so nonuniform-speed curves do not flood)
    std::vector<double> chord_len(m);
    for (int i = 0; i < m; ++i) chord_len[i] = dist(p[i], chord_end(i));
    std::vector<std::pair<int, int>> cands;
    int overlap_hits = 0;
    {
        std::vector<std::pair<int, int>> seen;
        for (auto& [key, list] : grid) {
            for (size_t u = 0; u < list.size(); ++u)
                for (size_t v = u + 1; v < list.size(); ++v) {
                    int i = std::min(list[u], list[v]), j = std::max(list[u], list[v]);
                    if (j - i <= 1) continue;
                    if (closed && i == 0 && j == m - 1) continue;
                    seen.emplace_back(i, j);
                }
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        const int param_gap = std::max(4, n / 128);
        for (auto& [i, j] : seen) {
            const Vec3 &a0 = p[i], &a1 = chord_end(i), &b0 = p[j], &b1 = chord_end(j);
            bool crossing = scandetail::arcs_cross(a0, a1, b0, b1);
            bool near_param = (j - i) < param_gap || (closed && i + m - j < param_gap);
            double near_tol =
                4.0 * (chord_len[i] * chord_len[i] + chord_len[j] * chord_len[j]) + 1e-9;
            double d = crossing ? 0.0 : scandetail::segment_distance(a0, a1, b0, b1);
            if (crossing || (d < near_tol && !near_param)) {
                cands.emplace_back(i, j);
                Vec3 du = a1 - a0, dv = b1 - b0;
                // exactly coincident, parameter-separated chords indicate a
                // retraced stretch (e.g. a doubled circle inside a concat)
                if (d < 1e-9 && !crossing && norm(cross(du, dv)) < 1e-6 * norm(du) * norm(dv))
                    ++overlap_hits;
            }
        }
    }
    if (int(cands.size()) > opt.max_candidates || overlap_hits > n / 16) {
        if (opt.throw_on_degenerate) fail(errc::degenerate, "overlapping strands");
        if (degenerate_overlap) *degenerate_overlap = true;
        return {};
    }

    // refine each candidate by damped Newton on the stationarity of |g(t0)-g(t1)|^2
    std::vector<DoublePoint> found;
    for (auto& [i, j] : cands) {
        double t0 = (i + 0.5) / n, t1 = (j + 0.5) / n;
        bool proper = scandetail::arcs_cross(p[i], chord_end(i), p[j], chord_end(j));
        double lambda = 1e-8;
        bool ok = false;
        Jet2 j0 = eval2(c, t0), j1 = eval2(c, t1);
        double f = norm2(j0.p - j1.p);
        for (int it = 0; it < 60; ++it) {
            Vec3 d = j0.p - j1.p;
            double F1 = dot(d, j0.v), F2 = -dot(d, j1.v);
            double J11 = dot(j0.v, j0.v) + dot(d, j0.a);
            double J12 = -dot(j1.v, j0.v);
            double J21 = -dot(j0.v, j1.v);
            double J22 = dot(j1.v, j1.v) - dot(d, j1.a);
            double a11 = J11 + lambda, a22 = J22 + lambda;
            double den = a11 * a22 - J12 * J21;
            if (std::abs(den) < 1e-30) { lambda *= 10; continue; }
            double dt0 = (-F1 * a22 + F2 * J12) / den;
            double dt1 = (-F2 * a11 + F1 * J21) / den;
            double step = std::max(std::abs(dt0), std::abs(dt1));
            double clampv = 2.0 / n;
            if (step > clampv) {
                dt0 *= clampv / step;
                dt1 *= clampv / step;
            }
            double nt0 = t0 + dt0, nt1 = t1 + dt1;
            if (closed) {
                nt0 -= std::floor(nt0);
                nt1 -= std::floor(nt1);
            } else {
                nt0 = std::clamp(nt0, 0.0, 1.0);
                nt1 = std::clamp(nt1, 0.0, 1.0);
            }
            Jet2 n0 = eval2(c, nt0), n1 = eval2(c, nt1);
            double nf = norm2(n0.p - n1.p);
            if (nf <= f + 1e-30) {
                double improve = f - nf;
                t0 = nt0; t1 = nt1; j0 = n0; j1 = n1; f = nf;
                lambda = std::max(lambda * 0.3, 1e-12);
                // drive tangential contacts all the way down so the parameters
                // localize; transversal crossings bottom out immediately
                if (f < 1e-28 || (improve < 1e-28 && f < tol::refine_target * tol::refine_target)) {
                    ok = true;
                    break;
                }
                if (improve < 1e-30) break;
            } else {
                lambda *= 10;
                if (lambda > 1e8) break;
            }
        }
        if (!ok && f < tol::double_point * tol::double_point) ok = true;
        if (!ok) {
            if (proper)
                fail(errc::non_convergence, "double point refinement stalled");
            continue;
        }
        // drop the trivial diagonal
        double gap = std::abs(t1 - t0);
        if (closed) gap = std::min(gap, 1.0 - gap);
        if (gap < 1e-4) continue;
        DoublePoint dp;
        dp.t0 = std::min(t0, t1);
        dp.t1 = std::max(t0, t1);
        dp.sep = std::sqrt(f);
        dp.image = (j0.p + j1.p) * 0.5;
        Vec3 u0 = normalized(j0.v), u1 = normalized(j1.v);
        dp.tangency = norm(cross(u0, u1)) < tol::tangency;
        if (dp.tangency) {
            double k0 = geodesic_curvature(t0 < t1 ? j0 : j1);
            double k1 = geodesic_curvature(t0 < t1 ? j1 : j0);
            dp.generic = std::abs(k0 - k1) > 1e-6;
        }
        dp.at_basepoint = closed && (dp.t0 < 1e-6 || dp.t1 > 1.0 - 1e-6);
        found.push_back(dp);
    }

    // dedupe within parameter tolerance (circular for closed curves), keeping
    // the tightest representative
    std::sort(found.begin(), found.end(), [](const DoublePoint& a, const DoublePoint& b) {
        return a.t0 != b.t0 ? a.t0 < b.t0 : a.t1 < b.t1;
    });
    auto pdist = [&](double a, double b) {
        double d = std::abs(a - b);
        return closed ? std::min(d, 1.0 - d) : d;
    };
    auto pair_match = [&](const DoublePoint& a, const DoublePoint& b, double ptol) {
        bool direct = pdist(a.t0, b.t0) < ptol && pdist(a.t1, b.t1) < ptol;
        bool swapped = closed && pdist(a.t0, b.t1) < ptol && pdist(a.t1, b.t0) < ptol;
        return direct || swapped;
    };
    std::vector<DoublePoint> out;
    for (auto& dp : found) {
        bool dup = false;
        for (auto& q : out) {
            // tangential contacts localize only to ~(sep)^(1/3); merge them wide
            double ptol = (q.tangency || dp.tangency) ? 2e-3 : tol::dedupe;
            if (pair_match(q, dp, ptol) &&
                (ptol == tol::dedupe || dist(q.image, dp.image) < 1e-6)) {
                if (dp.sep < q.sep) q = dp;
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(dp);
    }
    return out;
}

// Clusters double points sharing a spherical image into triple points.
inline std::vector<TriplePoint> find_triple_points(const std::vector<DoublePoint>& dps,
                                                   const CurvePtr& c) {
    const double img_tol = tol::cluster_image;
    std::vector<int> group(dps.size(), -1);
    int ngroups = 0;
    for (size_t i = 0; i < dps.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (dist(dps[i].image, dps[j].image) < img_tol) {
                group[i] = group[j];
                break;
            }
        if (group[i] < 0) group[i] = ngroups++;
    }
    std::vector<TriplePoint> out;
    for (int g = 0; g < ngroups; ++g) {
        std::vector<double> ts;
        Vec3 img{0, 0, 0};
        int members = 0;
        for (size_t i = 0; i < dps.size(); ++i) {
            if (group[i] != g) continue;
            ++members;
            img += dps[i].image;
            for (double t : {dps[i].t0, dps[i].t1}) {
                bool dup = false;
                for (double u : ts)
                    if (std::abs(u - t) < 1e-5) dup = true;
                if (!dup) ts.push_back(t);
            }
        }
        if (members < 3 || ts.size() != 3) continue;
        std::sort(ts.begin(), ts.end());
        TriplePoint tp;
        tp.t0 = ts[0];
        tp.t1 = ts[1];
        tp.t2 = ts[2];
        tp.image = img / double(members);
        Vec3 v0 = normalized(eval2(c, ts[0]).v);
        Vec3 v1 = normalized(eval2(c, ts[1]).v);
        Vec3 v2 = normalized(eval2(c, ts[2]).v);
        tp.generic = norm(cross(v0, v1)) > 1e-6 && norm(cross(v1, v2)) > 1e-6 &&
                     norm(cross(v0, v2)) > 1e-6;
        out.push_back(tp);
    }
    return out;
}

// Both candidate arcs of every transversal double point, with sign and simplicity.
inline std::vector<Arc> find_arcs(const CurvePtr& c, const std::vector<DoublePoint>& dps) {
    std::vector<Arc> out;
    auto inside = [](double t, double lo, double hi) {
        // parameter set of the arc (lo,hi) with wraparound when hi < lo
        if (lo < hi) return t > lo + 1e-9 && t < hi - 1e-9;
        return t > lo + 1e-9 || t < hi - 1e-9;
    };
    for (auto& dp : dps) {
        if (dp.tangency) continue;
        for (int swap = 0; swap < 2; ++swap) {
            Arc arc;
            arc.t_minus = swap ? dp.t1 : dp.t0;
            arc.t_plus = swap ? dp.t0 : dp.t1;
            Jet2 jm = eval2(c, arc.t_minus), jp = eval2(c, arc.t_plus);
            arc.positive = det3(jm.p, jp.v, jm.v) > 0;
            arc.simple = true;
            for (auto& other : dps) {
                for (double t : {other.t0, other.t1}) {
                    if (std::abs(t - dp.t0) < 1e-7 || std::abs(t - dp.t1) < 1e-7) continue;
                    if (inside(t, arc.t_minus, arc.t_plus)) arc.simple = false;
                }
                if (!arc.simple) break;
            }
            out.push_back(arc);
        }
    }
    return out;
}

inline bool all_on_boundary(const ConeHull& h) {
    if (h.full_space) return false;
    for (char b : h.on_boundary)
        if (!b) return false;
    return true;
}

// Convex curve test: simple, and the image lies on the boundary of V_gamma.
// `allow_equal_endpoints` admits closed sub-arcs whose two ends meet.
inline bool is_convex_curve(const CurvePtr& c, int n_samples = 512,
                            bool allow_equal_endpoints = false) {
    ScanOptions opt;
    opt.n_samples = n_samples;
    opt.throw_on_degenerate = false;
    bool degen = false;
    auto dps = find_double_points(c, opt, &degen);
    if (degen) return false;
    for (auto& dp : dps) {
        if (allow_equal_endpoints && dp.t0 < 2e-3 && dp.t1 > 1.0 - 2e-3) continue;
        return false;
    }
    return all_on_boundary(cone_hull(c, n_samples));
}

inline CurveDiagnostics diagnose(const CurvePtr& c, ScanOptions opt = {}) {
    CurveDiagnostics d;
    d.n_samples = opt.n_samples;
    d.curvature = geodesic_curvature_profile(c, std::min(opt.n_samples, 4096));
    d.locally_convex = d.curvature.locally_convex;
    d.closed = dist(position(c, 0.0), position(c, 1.0)) < 1e-9;
    ScanOptions o = opt;
    o.throw_on_degenerate = false;
    d.double_points = find_double_points(c, o, &d.degenerate_overlap);
    if (!d.degenerate_overlap) {
        d.triple_points = find_triple_points(d.double_points, c);
        bool tang = false;
        for (auto& dp : d.double_points) tang |= dp.tangency;
        d.generic = d.triple_points.empty() && !tang;
        std::vector<DoublePoint> transversal;
        for (auto& dp : d.double_points)
            if (!dp.tangency) transversal.push_back(dp);
        d.arcs = find_arcs(c, transversal);
        d.convex = d.double_points.empty() && all_on_boundary(cone_hull(c, std::min(opt.n_samples, 1024)));
    }
    return d;
}

} // namespace scl

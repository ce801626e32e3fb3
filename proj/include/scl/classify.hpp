#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "scl/curve.hpp"
#include "scl/frame.hpp"
#include "scl/scan.hpp"

namespace scl {

// ---- the X_{Q,c} criterion -------------------------------------------------

enum class CriterionCase { fixed_e1, antipodal_e1, independent };

struct ConvexCriterion {
    bool nonempty = false;
    CriterionCase kind = CriterionCase::independent;
    double alpha = 0;            // fixed_e1 case
    double alpha0 = 0, alpha1 = 0; // independent case
};

namespace classifydetail {

inline double wrap_angle(double a) {
    while (a > pi) a -= two_pi;
    while (a <= -pi) a += two_pi;
    return a;
}

} // namespace classifydetail

// Decides whether the component of convex curves X_{Q,c} is nonempty, by the
// three-case analysis: Qe1 = e1 (angle from Qe2 to e2 must lie in [0, pi)),
// Qe1 = -e1 (always empty), and the independent case (both geodesic offsets
// alpha0, alpha1 strictly positive).
inline ConvexCriterion convex_component_nonempty(const Rotation& Q) {
    ConvexCriterion r;
    Vec3 qe1 = Q * e1, qe2 = Q * e2;
    if (dist(qe1, e1) < tol::axis_match) {
        r.kind = CriterionCase::fixed_e1;
        // angle from Qe2 to e2, measured around the outward normal e1
        r.alpha = classifydetail::wrap_angle(-std::atan2(qe2.z, qe2.y));
        r.nonempty = r.alpha >= 0 && r.alpha < pi - 1e-12;
        return r;
    }
    if (dist(qe1, -e1) < tol::axis_match) {
        r.kind = CriterionCase::antipodal_e1;
        r.nonempty = false;
        return r;
    }
    r.kind = CriterionCase::independent;
    double cb = dot(e1, qe1);
    Vec3 v0 = normalized(qe1 - e1 * cb);       // tangent of the geodesic at e1
    Vec3 v1 = normalized(qe1 * cb - e1);       // tangent of the geodesic at Qe1
    r.alpha0 = std::atan2(det3(e1, e2, v0), dot(e2, v0));
    r.alpha1 = std::atan2(det3(qe1, v1, qe2), dot(v1, qe2));
    r.nonempty = r.alpha0 > 0 && r.alpha1 > 0;
    return r;
}

// ---- explicit convex curves -------------------------------------------------

namespace classifydetail {

// Teardrop for Qe1 = e1, arrival angle alpha in (0, pi): normalized cubic whose
// radial projection is the graph of the convex function x(y) = y^2 + 1/(y + cot a).
inline CurvePtr teardrop(double alpha) {
    double ct = std::cos(alpha) / std::sin(alpha);
    double c1 = 1 + ct;
    std::vector<std::vector<double>> coeff(3);
    coeff[0] = {1.0, -(3 + 2 * ct), c1 * c1 + 2 * c1, 1 - c1 * c1};
    coeff[1] = {0.0, 1.0, -(2 + ct), c1};
    coeff[2] = {0.0, 0.0, 1.0, -1.0};
    return poly_proj(std::move(coeff));
}

// Independent case: arc of an ellipse cone fitted to the boundary frames.
// The ellipse is the image of a latitude circle under L, solved from the
// endpoint and tangent conditions; positivity of the solution is equivalent
// to the criterion alpha0, alpha1 > 0.
inline CurvePtr conic_convex(const Rotation& Q) {
    const double rho = pi / 4, T = pi / 2;
    Vec3 qe1 = Q * e1, qe2 = Q * e2;
    double sr = std::sin(rho), cr = std::cos(rho);
    Vec3 c0{sr, 0, cr}, dc0{0, sr, 0};
    Vec3 cT{sr * std::cos(T), sr * std::sin(T), cr};
    // c'(T) = A c(0) + B c'(0) + C c(T) with A = -C, B = -1, C = cot(T/2)
    double C = std::cos(T / 2) / std::sin(T / 2), A = -C, B = -1.0;
    // Qe2 = x e1 + y e2 + z Qe1
    Mat3 basis = Mat3::from_columns(e1, e2, qe1);
    Vec3 xyz = solve3(basis, qe2);
    double y = xyz.y;
    if (std::abs(y) < 1e-12) fail(errc::non_convergence, "degenerate boundary data");
    double mu0 = 1.0;
    double mu1 = B * mu0 / y;
    if (mu1 <= 0) fail(errc::non_convergence, "criterion violated: no convex arc");
    double kappa0 = A - mu1 * xyz.x;
    Mat3 src = Mat3::from_columns(c0, dc0, cT);
    Mat3 dst = Mat3::from_columns(e1, e2 * mu0 + e1 * kappa0, qe1);
    Mat3 L = dst * inverse(src);
    if (L.det() <= 0) fail(errc::non_convergence, "criterion violated: orientation");
    return conic_arc(L, rho, 0.0, T);
}

} // namespace classifydetail

// A convex curve in X_{Q,c}; requires the criterion to hold.
inline CurvePtr convex_curve_for(const Rotation& Q) {
    ConvexCriterion cr = convex_component_nonempty(Q);
    if (!cr.nonempty) fail(errc::not_in_a, "X_{Q,c} is empty");
    switch (cr.kind) {
        case CriterionCase::fixed_e1:
            if (cr.alpha < 1e-12) return nu(); // Q = I
            return classifydetail::teardrop(cr.alpha);
        case CriterionCase::independent:
            return classifydetail::conic_convex(Q);
        default:
            fail(errc::not_in_a, "X_{Q,c} is empty");
    }
}

// ---- the set A -------------------------------------------------------------

enum class AMembership { interior, boundary_member, non_member };

// z is in A iff some convex curve lifts to endpoint z. The open interior has
// the closed form b, d > 0 and bd > |ac|; other unit quaternions defer to the
// criterion plus the endpoint of a constructed convex curve.
inline AMembership in_A(const Quat& z, int lift_samples = 256) {
    if (std::abs(z.norm() - 1.0) > tol::unit_quat) fail(errc::non_unit, "in_A requires |z| = 1");
    if (z.b > 0 && z.d > 0 && z.b * z.d > std::abs(z.a * z.c)) return AMembership::interior;
    Rotation Q = pi_project(z);
    ConvexCriterion cr = convex_component_nonempty(Q);
    if (!cr.nonempty) return AMembership::non_member;
    CurvePtr gamma0 = convex_curve_for(Q);
    Quat w = lift_curve(gamma0, lift_samples).endpoint;
    return dot(w, z) > 0.5 ? AMembership::boundary_member : AMembership::non_member;
}

// ---- component classification ----------------------------------------------

struct ComponentClass {
    Quat endpoint_z;
    bool convex = false;
    std::string label; // "X_z" or "X_z_c"
};

inline ComponentClass classify_component(const CurvePtr& c, int n_samples = 1024) {
    if (!is_locally_convex(c, n_samples)) fail(errc::not_locally_convex, "curve is not in X");
    ComponentClass r;
    r.endpoint_z = component_sign(c);
    r.convex = is_convex_curve(c, std::min(n_samples, 1024));
    r.label = r.convex ? "X_z_c" : "X_z";
    return r;
}

// ---- stars -----------------------------------------------------------------

// A star has 2k+1 transversal double points whose images form a convex
// spherical polygon with exactly two curve segments joining adjacent vertices.
inline std::pair<bool, int> is_star(const CurveDiagnostics& d) {
    if (d.degenerate_overlap || !d.generic) return {false, 0};
    const auto& dps = d.double_points;
    if (dps.empty() || dps.size() % 2 == 0) return {false, 0};
    int k = (int(dps.size()) - 1) / 2;
    if (k == 0) return {true, 0};

    const int nv = int(dps.size());
    // cyclic order of the vertex images around their spherical centroid
    Vec3 centroid{0, 0, 0};
    for (auto& dp : dps) centroid += dp.image;
    if (norm(centroid) < 1e-9) return {false, 0};
    centroid = normalized(centroid);
    Vec3 b1 = normalized(std::abs(centroid.x) < 0.9 ? cross(centroid, e1) : cross(centroid, e2));
    Vec3 b2 = cross(centroid, b1);
    std::vector<int> order(nv);
    for (int i = 0; i < nv; ++i) order[i] = i;
    auto ang = [&](int i) {
        return std::atan2(dot(dps[i].image, b2), dot(dps[i].image, b1));
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ang(a) < ang(b); });

    // strict convexity with a uniform orientation
    double sign0 = 0;
    for (int i = 0; i < nv; ++i) {
        const Vec3& a = dps[order[i]].image;
        const Vec3& b = dps[order[(i + 1) % nv]].image;
        const Vec3& cc = dps[order[(i + 2) % nv]].image;
        double dd = det3(a, b, cc);
        if (std::abs(dd) < 1e-8) return {false, 0};
        if (sign0 == 0) sign0 = dd > 0 ? 1 : -1;
        if (dd * sign0 < 0) return {false, 0};
    }

    // two curve segments between every pair of polygon-adjacent vertices
    struct Visit {
        double t;
        int vertex;
    };
    std::vector<Visit> visits;
    for (int i = 0; i < nv; ++i) {
        visits.push_back({dps[i].t0, i});
        visits.push_back({dps[i].t1, i});
    }
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.t < b.t; });
    std::vector<int> pos(nv); // position of vertex in the polygon cycle
    for (int i = 0; i < nv; ++i) pos[order[i]] = i;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
            int cnt = 0;
            for (size_t i = 0; i < visits.size(); ++i) {
                int x = visits[i].vertex, y = visits[(i + 1) % visits.size()].vertex;
                if ((x == a && y == b) || (x == b && y == a)) ++cnt;
            }
            int dpos = std::abs(pos[a] - pos[b]);
            bool adjacent = dpos == 1 || dpos == nv - 1;
            if (adjacent && cnt != 2) return {false, 0};
            if (!adjacent && cnt != 0) return {false, 0};
        }
    return {true, k};
}

inline std::pair<bool, int> is_star(const CurvePtr& c, int n_samples = 2048) {
    ScanOptions opt;
    opt.n_samples = n_samples;
    opt.throw_on_degenerate = false;
    return is_star(diagnose(c, opt));
}

// ---- trefoils --------------------------------------------------------------

struct TrefoilVerdict {
    bool yes = false;
    double t0 = 0, t1 = 0, t2 = 0;
};

// One generic triple point, exactly its three double points, convex thirds.
inline TrefoilVerdict is_trefoil(const CurvePtr& c, const CurveDiagnostics& d) {
    TrefoilVerdict v;
    if (d.degenerate_overlap) return v;
    if (d.triple_points.size() != 1 || !d.triple_points[0].generic) return v;
    if (d.double_points.size() != 3) return v;
    for (auto& dp : d.double_points)
        if (dp.tangency) return v;
    const TriplePoint& tp = d.triple_points[0];
    CurvePtr thirds[3] = {window(c, tp.t0, tp.t1), window(c, tp.t1, tp.t2),
                          window(c, tp.t2, 1.0 + tp.t0)};
    for (auto& th : thirds)
        if (!is_convex_curve(th, 512, /*allow_equal_endpoints=*/true)) return v;
    v.yes = true;
    v.t0 = tp.t0;
    v.t1 = tp.t1;
    v.t2 = tp.t2;
    return v;
}

inline TrefoilVerdict is_trefoil(const CurvePtr& c, int n_samples = 2048) {
    ScanOptions opt;
    opt.n_samples = n_samples;
    opt.throw_on_degenerate = false;
    return is_trefoil(c, diagnose(c, opt));
}

// ---- flowers ---------------------------------------------------------------

// theta_M from the two-case rule: the argument of -Qe2 when Qe1 = e1, of Qe1
// otherwise, taken in (0, pi] with snapping at pi.
inline double theta_M(const Quat& z) {
    Rotation Q = pi_project(z);
    Vec3 qe1 = Q * e1;
    double th;
    if (dist(qe1, e1) < tol::axis_match) {
        Vec3 m = -(Q * e2);
        th = std::atan2(m.z, m.y);
    } else {
        th = std::atan2(qe1.z, qe1.y);
    }
    if (std::abs(th - pi) < 1e-9 || std::abs(th + pi) < 1e-9) th = pi;
    return th;
}

struct FlowerWitness {
    int k = 0;
    std::vector<double> ts;      // visit times of e1, strictly inside (0,1)
    std::vector<double> thetas;  // tangent arguments, strictly increasing
    double theta_m = 0;
};

namespace classifydetail {

// All t in (0,1) with gamma(t) = e1, by coarse scan plus Newton on <gamma-e1, gamma'>.
inline std::vector<double> visits_of_e1(const CurvePtr& c, int n_scan = 4096) {
    std::vector<double> out;
    std::vector<double> seeds;
    std::vector<double> d2(n_scan + 1);
    for (int i = 0; i <= n_scan; ++i) d2[i] = norm2(position(c, double(i) / n_scan) - e1);
    for (int i = 1; i < n_scan; ++i)
        if (d2[i] < d2[i - 1] && d2[i] <= d2[i + 1] && d2[i] < 1e-4)
            seeds.push_back(double(i) / n_scan);
    for (double t : seeds) {
        for (int it = 0; it < 40; ++it) {
            Jet2 j = eval2(c, t);
            Vec3 d = j.p - e1;
            double g = dot(d, j.v);
            double h = dot(j.v, j.v) + dot(d, j.a);
            if (std::abs(h) < 1e-14) break;
            double step = -g / h;
            step = std::clamp(step, -1.0 / n_scan, 1.0 / n_scan);
            t = std::clamp(t + step, 0.0, 1.0);
            if (std::abs(step) < 1e-15) break;
        }
        if (t > 1e-6 && t < 1 - 1e-6 && dist(position(c, t), e1) < tol::flower_visit) {
            bool dup = false;
            for (double u : out)
                if (std::abs(u - t) < 1e-6) dup = true;
            if (!dup) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace classifydetail

// Flower of 2k+1 petals: 2k interior visits of e1 with strictly increasing
// tangent arguments below theta_M, double points only at the visits, petals convex.
inline std::pair<bool, FlowerWitness> is_flower(const CurvePtr& c, const Quat& z, int k) {
    FlowerWitness w;
    Quat expected = k % 2 == 0 ? z : -z;
    Quat endpoint = component_sign(c);
    if (dist(endpoint, expected) > tol::snap_endpoint)
        fail(errc::endpoint_mismatch, "curve endpoint is not (-1)^k z");
    w.theta_m = theta_M(z);
    if (w.theta_m <= 1e-12) return {false, w};

    w.ts = classifydetail::visits_of_e1(c);
    if (int(w.ts.size()) != 2 * k) return {false, w};
    w.k = k;

    // condition 3: arguments of (-1)^i gamma'(t_i) strictly increasing below theta_M
    double prev = 0; // theta_0 = 0 at the basepoint
    for (size_t i = 0; i < w.ts.size(); ++i) {
        Vec3 v = normalized(eval2(c, w.ts[i]).v);
        if ((i + 1) % 2 == 1) v = -v;
        double th = std::atan2(v.z, v.y);
        if (!(th > prev - 1e-6 && th < w.theta_m - 1e-9)) return {false, w};
        w.thetas.push_back(th);
        prev = th;
    }

    // condition 2: double points only of the form (t_i, t_j)
    ScanOptions opt;
    opt.n_samples = 2048;
    opt.throw_on_degenerate = false;
    bool degen = false;
    auto dps = find_double_points(c, opt, &degen);
    if (degen) return {false, w};
    auto is_visit = [&](double t) {
        if (t < 1e-4 || t > 1 - 1e-4) return true; // basepoint
        for (double u : w.ts)
            if (std::abs(u - t) < 1e-4) return true;
        return false;
    };
    for (auto& dp : dps)
        if (!is_visit(dp.t0) || !is_visit(dp.t1)) return {false, w};

    // condition 4: petals are convex
    std::vector<double> cuts{0.0};
    cuts.insert(cuts.end(), w.ts.begin(), w.ts.end());
    cuts.push_back(1.0);
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (!is_convex_curve(window(c, cuts[i], cuts[i + 1]), 512, true)) return {false, w};

    return {true, w};
}

// ---- the map g_1 -----------------------------------------------------------

// Orientation of the near-trefoil double-point triangle on the star side.
// Calibrated against the f1 family: the k=1 star resolutions carry this sign.
inline constexpr double g1_star_orientation = -1.0;

struct G1Options {
    double rho_bar = 0.05;
    int n_samples = 1024;
};

// Surrogate for the paper's g_1: exactly (0,0,1) on stars, exactly (0,0,-1)
// far from the star closure, and a smooth band through the trefoil wall where
// the triangle orientation picks the side and theta comes from the triple point.
inline Vec3 g1_eval(const CurvePtr& c, G1Options opt = {}) {
    Quat endpoint = component_sign(c);
    if (dist(endpoint, Quat{1, 0, 0, 0}) > tol::snap_endpoint)
        fail(errc::not_in_x1, "g1 is defined on X_1");

    ScanOptions so;
    so.n_samples = opt.n_samples;
    so.throw_on_degenerate = false;
    CurveDiagnostics d;
    d.n_samples = so.n_samples;
    d.double_points = find_double_points(c, so, &d.degenerate_overlap);
    if (d.degenerate_overlap) return {0, 0, -1};

    const auto& dps = d.double_points;
    bool tangency = false;
    for (auto& dp : dps) tangency |= dp.tangency;

    if (dps.size() == 3 && !tangency) {
        // near-trefoil test: six visit parameters clustering into three groups
        // on the circle (the triple point may straddle the basepoint)
        std::vector<double> ts{dps[0].t0, dps[0].t1, dps[1].t0,
                               dps[1].t1, dps[2].t0, dps[2].t1};
        std::sort(ts.begin(), ts.end());
        double gaps[6];
        for (int i = 0; i < 6; ++i) {
            double g = ts[(i + 1) % 6] - ts[i];
            gaps[i] = i == 5 ? g + 1.0 : g;
        }
        // groups of two separated by the three largest circular gaps
        int order[6] = {0, 1, 2, 3, 4, 5};
        std::sort(order, order + 6, [&](int a, int b) { return gaps[a] > gaps[b]; });
        bool split_pattern = (order[0] % 2 == order[1] % 2) && (order[1] % 2 == order[2] % 2);
        int parity = order[0] % 2; // group boundaries at this parity
        bool clustered = split_pattern;
        double means[3];
        if (clustered) {
            for (int g = 0; g < 3; ++g) {
                int first = (parity + 1 + 2 * g) % 6; // group = {first, first+1}
                double a = ts[first % 6], b = ts[(first + 1) % 6];
                if (b < a) b += 1.0; // straddles the basepoint
                if (b - a > 0.05) clustered = false;
                double m = 0.5 * (a + b);
                means[g] = m - std::floor(m);
            }
            if (clustered) {
                for (int g = 0; g < 3 && clustered; ++g)
                    if (gaps[order[g]] < 0.1) clustered = false;
            }
        }
        double rho = std::max({dist(dps[0].image, dps[1].image), dist(dps[0].image, dps[2].image),
                               dist(dps[1].image, dps[2].image)});
        if (clustered && rho <= opt.rho_bar) {
            // deterministic vertex order by (t0,t1); orientation flips across the wall
            std::vector<int> idx{0, 1, 2};
            std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                return dps[a].t0 != dps[b].t0 ? dps[a].t0 < dps[b].t0 : dps[a].t1 < dps[b].t1;
            });
            double zeta = det3(dps[idx[0]].image, dps[idx[1]].image, dps[idx[2]].image);
            double side = (zeta >= 0 ? 1.0 : -1.0) * g1_star_orientation; // -1 on the star side
            double u = rho / opt.rho_bar;
            double smooth = u * u * (3 - 2 * u);
            double g1a = pi / 2 * (1.0 + side * smooth);
            std::sort(means, means + 3);
            double t0 = means[0], t2 = means[2];
            double theta = two_pi * t0 / (1.0 + t0 - t2);
            return {std::sin(g1a) * std::cos(theta), std::sin(g1a) * std::sin(theta),
                    std::cos(g1a)};
        }
    }

    // plateaus: exactly the poles
    d.triple_points = find_triple_points(dps, c);
    d.generic = d.triple_points.empty() && !tangency;
    auto [star, k] = is_star(d);
    (void)k;
    return star ? Vec3{0, 0, 1} : Vec3{0, 0, -1};
}

} // namespace scl

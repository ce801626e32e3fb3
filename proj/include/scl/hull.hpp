#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "scl/curve.hpp"
#include "scl/error.hpp"
#include "scl/vec.hpp"

namespace scl {

// The cone V_gamma spanned by curve samples: either all of R^3 or a closed convex
// cone described by supporting plane normals through the origin (oriented inward,
// <n, sample> >= -1e-9 for every sample).
struct ConeHull {
    bool full_space = false;
    bool flat = false;                 // samples coplanar with the origin
    std::vector<Vec3> facet_normals;
    std::vector<char> on_boundary;     // per input sample
};

namespace hulldetail {

struct Face {
    int a, b, c;
    Vec3 n;      // outward unit normal
    double d;    // plane offset, <n,x> = d
    bool alive = true;
};

// Incremental hull with epsilon visibility; points are processed in index order
// so the facet set is deterministic. Returns empty if the set has rank <= 2.
inline std::vector<Face> incremental_hull(const std::vector<Vec3>& pts, double eps) {
    const int n = int(pts.size());
    int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
    double best = -1;
    for (int i = 1; i < n; ++i) {
        double d = dist(pts[i], pts[i0]);
        if (d > best + 1e-15) { best = d; i1 = i; }
    }
    if (i1 < 0 || best < eps) return {};
    Vec3 u = pts[i1] - pts[i0];
    best = -1;
    for (int i = 0; i < n; ++i) {
        double d = norm(cross(u, pts[i] - pts[i0]));
        if (d > best + 1e-15) { best = d; i2 = i; }
    }
    if (best < eps) return {};
    Vec3 nn = cross(u, pts[i2] - pts[i0]);
    nn = nn / norm(nn);
    best = -1;
    for (int i = 0; i < n; ++i) {
        double d = std::abs(dot(nn, pts[i] - pts[i0]));
        if (d > best + 1e-15) { best = d; i3 = i; }
    }
    if (best < eps) return {};

    Vec3 interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
    auto mkface = [&](int a, int b, int c) -> Face {
        Face f{a, b, c, {}, 0, true};
        Vec3 fn = cross(pts[b] - pts[a], pts[c] - pts[a]);
        double l = norm(fn);
        f.n = fn / l;
        if (dot(f.n, interior - pts[a]) > 0) { std::swap(f.b, f.c); f.n = -f.n; }
        f.d = dot(f.n, pts[f.a]);
        return f;
    };

    std::vector<Face> faces{mkface(i0, i1, i2), mkface(i0, i1, i3), mkface(i0, i2, i3),
                            mkface(i1, i2, i3)};
    std::vector<char> used(n, 0);
    used[i0] = used[i1] = used[i2] = used[i3] = 1;

    for (int p = 0; p < n; ++p) {
        if (used[p]) continue;
        used[p] = 1;
        std::vector<int> visible;
        for (int f = 0; f < int(faces.size()); ++f)
            if (faces[f].alive && dot(faces[f].n, pts[p]) - faces[f].d > eps) visible.push_back(f);
        if (visible.empty()) continue;
        std::map<std::pair<int, int>, int> edge_count;
        for (int f : visible) {
            int v[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                auto key = std::minmax(v[e], v[(e + 1) % 3]);
                edge_count[{key.first, key.second}]++;
            }
            faces[f].alive = false;
        }
        for (auto& [edge, cnt] : edge_count) {
            if (cnt != 1) continue;
            Vec3 fn = cross(pts[edge.second] - pts[edge.first], pts[p] - pts[edge.first]);
            double l = norm(fn);
            if (l < 1e-18) continue; // collinear with the horizon edge
            faces.push_back(mkface(edge.first, edge.second, p));
        }
    }
    std::vector<Face> out;
    for (auto& f : faces)
        if (f.alive) out.push_back(f);
    return out;
}

} // namespace hulldetail

inline ConeHull cone_hull_of_points(const std::vector<Vec3>& samples,
                                    double eps = tol::hull_eps,
                                    double boundary_eps = tol::hull_boundary) {
    ConeHull result;
    result.on_boundary.assign(samples.size(), 0);

    std::vector<Vec3> pts;
    pts.reserve(samples.size() + 1);
    pts.push_back({0, 0, 0});
    pts.insert(pts.end(), samples.begin(), samples.end());

    auto faces = hulldetail::incremental_hull(pts, eps);

    if (faces.empty()) {
        // rank <= 2: the cone is contained in a plane through the origin
        result.flat = true;
        Vec3 nrm{0, 0, 1};
        double bestl = -1;
        const Vec3& ref = samples.empty() ? e1 : samples.front();
        for (auto& s : samples) {
            Vec3 c = cross(ref, s);
            double l = norm(c);
            if (l > bestl) { bestl = l; nrm = c / l; }
        }
        if (bestl < eps) { // collinear: any normal orthogonal to the ray
            Vec3 helper = std::abs(ref.x) < 0.9 ? e1 : e2;
            nrm = normalized(cross(ref, helper));
        }
        result.facet_normals = {nrm, -nrm};
        for (size_t i = 0; i < samples.size(); ++i) result.on_boundary[i] = 1;
        return result;
    }

    std::vector<Vec3> through_origin;
    for (auto& f : faces)
        if (std::abs(f.d) <= boundary_eps) through_origin.push_back(-f.n); // inward
    if (through_origin.empty()) {
        result.full_space = true; // origin interior: V_gamma = R^3
        return result;
    }
    result.facet_normals = std::move(through_origin);
    for (size_t i = 0; i < samples.size(); ++i) {
        double m = 1e300;
        for (auto& nn : result.facet_normals) m = std::min(m, std::abs(dot(nn, samples[i])));
        result.on_boundary[i] = m <= boundary_eps ? 1 : 0;
    }
    return result;
}

inline ConeHull cone_hull(const CurvePtr& c, int n_samples = 512) {
    std::vector<Vec3> pts(n_samples);
    for (int i = 0; i < n_samples; ++i) pts[i] = position(c, double(i) / (n_samples - 1));
    return cone_hull_of_points(pts);
}

} // namespace scl

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "scl/error.hpp"
#include "scl/parallel.hpp"
#include "scl/quat.hpp"
#include "scl/vec.hpp"

namespace scl {

struct DegreeReport {
    double value = 0;
    int rounded = 0;
    double residual = 0;
    std::string method;
    std::vector<std::pair<std::vector<double>, int>> preimages; // (domain point, sign)
};

namespace degdetail {

inline double det4(const Quat& c0, const Quat& c1, const Quat& c2, const Quat& c3) {
    const double m[4][4] = {{c0.a, c1.a, c2.a, c3.a},
                            {c0.b, c1.b, c2.b, c3.b},
                            {c0.c, c1.c, c2.c, c3.c},
                            {c0.d, c1.d, c2.d, c3.d}};
    double det = 0;
    for (int j = 0; j < 4; ++j) {
        double minor[3][3];
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int col = 0; col < 4; ++col) {
                if (col == j) continue;
                minor[r - 1][cc++] = m[r][col];
            }
        }
        double m3 = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                    minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                    minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        det += (j % 2 == 0 ? 1.0 : -1.0) * m[0][j] * m3;
    }
    return det;
}

} // namespace degdetail

// Degree of a map from the closed (s1,s2,t) box (s1, t periodic; s2 edges
// collapsed) to S^3: (1/2pi^2) sum det[F, dF/ds1, dF/ds2, dF/dt] dV on a
// midpoint grid with central differences (one-sided at the s2 edges).
//
// F receives (s1, s2, t) with s1 in [0,2pi), s2 in (0,pi), t in [0,1).
template <class MapFn>
DegreeReport degree_to_s3(MapFn&& F, int grid, double accept_residual = 0.1) {
    const int n1 = grid, n2 = grid, n3 = grid;
    const double h1 = two_pi / n1, h2 = pi / n2, h3 = 1.0 / n3;

    // cache F on the midpoint grid
    std::vector<Quat> val(size_t(n1) * n2 * n3);
    auto idx = [&](int i, int j, int k) {
        return (size_t(i) * n2 + j) * n3 + k;
    };
    parallel_for(n1, [&](int i) {
        double s1 = (i + 0.5) * h1;
        for (int j = 0; j < n2; ++j) {
            double s2 = (j + 0.5) * h2;
            for (int k = 0; k < n3; ++k) val[idx(i, j, k)] = F(s1, s2, (k + 0.5) * h3);
        }
    });

    std::vector<double> partial(n1, 0.0);
    parallel_for(n1, [&](int i) {
        double acc = 0;
        int ip = (i + 1) % n1, im = (i + n1 - 1) % n1;
        for (int j = 0; j < n2; ++j) {
            for (int k = 0; k < n3; ++k) {
                int kp = (k + 1) % n3, km = (k + n3 - 1) % n3;
                const Quat& f = val[idx(i, j, k)];
                Quat d1 = (val[idx(ip, j, k)] - val[idx(im, j, k)]) * (0.5 / h1);
                Quat d2;
                if (j == 0)
                    d2 = (val[idx(i, 1, k)] - val[idx(i, 0, k)]) * (1.0 / h2);
                else if (j == n2 - 1)
                    d2 = (val[idx(i, n2 - 1, k)] - val[idx(i, n2 - 2, k)]) * (1.0 / h2);
                else
                    d2 = (val[idx(i, j + 1, k)] - val[idx(i, j - 1, k)]) * (0.5 / h2);
                Quat d3 = (val[idx(i, j, kp)] - val[idx(i, j, km)]) * (0.5 / h3);
                acc += degdetail::det4(f, d1, d2, d3);
            }
        }
        partial[i] = acc * h1 * h2 * h3;
    });
    double total = 0;
    for (double p : partial) total += p;

    DegreeReport r;
    r.method = "quadrature";
    r.value = total / (2.0 * pi * pi);
    r.rounded = int(std::llround(r.value));
    r.residual = std::abs(r.value - r.rounded);
    if (r.residual >= accept_residual) fail(errc::residual_too_large, "S^3 degree quadrature");
    return r;
}

// Signed preimage count of the regular value j under F, with damped Gauss-Newton
// from grid seeds and numerical Jacobians.
template <class MapFn>
DegreeReport preimage_count_s3(MapFn&& F, const Quat& target, int seed_grid = 24,
                               int max_roots = 64) {
    const double h1 = two_pi / seed_grid, h2 = pi / seed_grid, h3 = 1.0 / seed_grid;
    struct Root {
        double x[3];
        int sign;
    };
    std::vector<Root> roots;

    auto eval = [&](const double x[3]) {
        double s1 = x[0] - two_pi * std::floor(x[0] / two_pi);
        double s2 = std::clamp(x[1], 1e-9, pi - 1e-9);
        double t = x[2] - std::floor(x[2]);
        return F(s1, s2, t);
    };

    // collect promising seeds
    std::vector<std::array<double, 4>> seeds; // (x, dist)
    for (int i = 0; i < seed_grid; ++i)
        for (int j = 0; j < seed_grid; ++j)
            for (int k = 0; k < seed_grid; ++k) {
                double x[3] = {(i + 0.5) * h1, (j + 0.5) * h2, (k + 0.5) * h3};
                double d = dist(eval(x), target);
                if (d < 0.35) seeds.push_back({x[0], x[1], x[2], d});
            }
    std::sort(seeds.begin(), seeds.end(),
              [](const auto& a, const auto& b) { return a[3] < b[3]; });
    if (seeds.size() > 48) seeds.resize(48);

    const double fd = 1e-6;
    for (auto& s : seeds) {
        double x[3] = {s[0], s[1], s[2]};
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            Quat f = eval(x);
            Quat r = f - target;
            double rn = r.norm();
            if (rn < 1e-10) {
                converged = true;
                break;
            }
            // 4x3 Jacobian by forward differences
            double J[4][3];
            for (int c = 0; c < 3; ++c) {
                double xp[3] = {x[0], x[1], x[2]};
                xp[c] += fd;
                Quat fp = eval(xp);
                J[0][c] = (fp.a - f.a) / fd;
                J[1][c] = (fp.b - f.b) / fd;
                J[2][c] = (fp.c - f.c) / fd;
                J[3][c] = (fp.d - f.d) / fd;
            }
            // normal equations with Levenberg damping
            double A[3][3] = {}, g[3] = {};
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b)
                    for (int rr = 0; rr < 4; ++rr) A[a][b] += J[rr][a] * J[rr][b];
                const double rv[4] = {r.a, r.b, r.c, r.d};
                for (int rr = 0; rr < 4; ++rr) g[a] += J[rr][a] * rv[rr];
                A[a][a] += 1e-9;
            }
            Mat3 Am;
            Am.m = {A[0][0], A[0][1], A[0][2], A[1][0], A[1][1],
                    A[1][2], A[2][0], A[2][1], A[2][2]};
            Vec3 step = solve3(Am, {-g[0], -g[1], -g[2]});
            double cap = 0.25;
            double mn = std::max({std::abs(step.x), std::abs(step.y), std::abs(step.z)});
            if (mn > cap) step = step * (cap / mn);
            x[0] += step.x;
            x[1] += step.y;
            x[2] += step.z;
            if (mn < 1e-14) break;
        }
        if (!converged) continue;
        Quat f = eval(x);
        if (dist(f, target) > 1e-8) continue;
        bool dup = false;
        auto wdist = [](double a, double b, double period) {
            double d = std::abs(a - b);
            d -= period * std::floor(d / period);
            return std::min(d, period - d);
        };
        for (auto& rt : roots) {
            double dd = wdist(rt.x[0], x[0], two_pi) + std::abs(rt.x[1] - x[1]) +
                        wdist(rt.x[2], x[2], 1.0);
            if (dd < 1e-4) dup = true;
        }
        if (dup) continue;
        // orientation sign: det[F, d1 F, d2 F, d3 F]
        Quat cols[3];
        for (int c = 0; c < 3; ++c) {
            double xp[3] = {x[0], x[1], x[2]}, xm[3] = {x[0], x[1], x[2]};
            xp[c] += fd;
            xm[c] -= fd;
            cols[c] = (eval(xp) - eval(xm)) * (0.5 / fd);
        }
        double dj = degdetail::det4(f, cols[0], cols[1], cols[2]);
        if (std::abs(dj) < 1e-8) fail(errc::non_regular, "preimage with singular Jacobian");
        roots.push_back({{x[0], x[1], x[2]}, dj > 0 ? 1 : -1});
        if (int(roots.size()) > max_roots) fail(errc::non_convergence, "too many preimages");
    }

    DegreeReport r;
    r.method = "preimage_count";
    int sum = 0;
    for (auto& rt : roots) {
        sum += rt.sign;
        r.preimages.push_back({{rt.x[0], rt.x[1], rt.x[2]}, rt.sign});
    }
    r.value = sum;
    r.rounded = sum;
    r.residual = 0;
    return r;
}

// Degree of a map from the (s1,s2) rectangle (s1 periodic, s2 poles collapsed)
// to S^2: (1/4pi) sum <F, d1 F x d2 F> dA, adaptively refined where F varies.
template <class MapFn>
DegreeReport degree_s2(MapFn&& F, int grid, double accept_residual = 0.1, int refine = 8) {
    const int n1 = grid, n2 = grid;
    const double h1 = two_pi / n1, h2 = pi / n2;

    std::vector<Vec3> val(size_t(n1) * n2);
    auto idx = [&](int i, int j) { return size_t(i) * n2 + j; };
    parallel_for(n1, [&](int i) {
        double s1 = (i + 0.5) * h1;
        for (int j = 0; j < n2; ++j) val[idx(i, j)] = F(s1, (j + 0.5) * h2);
    });

    // integrand of one evaluation point with local step
    auto cell_term = [&](double s1, double s2, double d1s, double d2s) {
        auto at = [&](double a, double b) {
            a -= two_pi * std::floor(a / two_pi);
            b = std::clamp(b, 1e-9, pi - 1e-9);
            return F(a, b);
        };
        Vec3 f = at(s1, s2);
        Vec3 du = (at(s1 + d1s, s2) - at(s1 - d1s, s2)) / (2 * d1s);
        Vec3 dv = (at(s1, s2 + d2s) - at(s1, s2 - d2s)) / (2 * d2s);
        return dot(f, cross(du, dv));
    };

    std::vector<double> partial(n1, 0.0);
    parallel_for(n1, [&](int i) {
        double acc = 0;
        int ip = (i + 1) % n1, im = (i + n1 - 1) % n1;
        for (int j = 0; j < n2; ++j) {
            const Vec3& f = val[idx(i, j)];
            // constant patches contribute nothing; detect variation against
            // the neighbor stencil before spending evaluations
            double var = dist(f, val[idx(ip, j)]) + dist(f, val[idx(im, j)]);
            if (j > 0) var += dist(f, val[idx(i, j - 1)]);
            if (j + 1 < n2) var += dist(f, val[idx(i, j + 1)]);
            if (var < 1e-12) continue;
            double s1 = (i + 0.5) * h1, s2 = (j + 0.5) * h2;
            // refine the cell: midpoint rule on an r x r subgrid
            int r = refine;
            double sub = 0;
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    double u = s1 + (a + 0.5) * h1 / r - h1 / 2;
                    double v = s2 + (b + 0.5) * h2 / r - h2 / 2;
                    sub += cell_term(u, v, h1 / (2 * r), h2 / (2 * r));
                }
            acc += sub * (h1 / r) * (h2 / r);
        }
        partial[i] = acc;
    });
    double total = 0;
    for (double p : partial) total += p;

    DegreeReport r;
    r.method = "quadrature";
    r.value = total / (4.0 * pi);
    r.rounded = int(std::llround(r.value));
    r.residual = std::abs(r.value - r.rounded);
    if (r.residual >= accept_residual) fail(errc::residual_too_large, "S^2 degree quadrature");
    return r;
}

// Chart for the analytic S^2 test maps, oriented so the identity has degree +1.
inline Vec3 sphere_chart(double s1, double s2) {
    return {std::sin(s2) * std::cos(s1), -std::sin(s2) * std::sin(s1), std::cos(s2)};
}

} // namespace scl

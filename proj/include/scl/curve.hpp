#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "scl/error.hpp"
#include "scl/quat.hpp"
#include "scl/rotation.hpp"
#include "scl/tolerances.hpp"
#include "scl/vec.hpp"

namespace scl {

// Position and first two derivatives of a spherical curve at a parameter value.
struct Jet2 {
    Vec3 p, v, a;
};

// Jet of gamma = u/|u| from the jet of an arbitrary nonvanishing u(t).
inline Jet2 normalize_jet(const Vec3& u, const Vec3& du, const Vec3& ddu) {
    double r = norm(u);
    Vec3 g = u / r;
    double dr = dot(g, du);
    Vec3 dg = (du - g * dr) / r;
    double ddr = (dot(du, du) + dot(u, ddu) - dr * dr) / r;
    Vec3 ddg = (ddu - dg * (2 * dr) - g * ddr) / r;
    return {g, dg, ddg};
}

// Frame of the 2-jet: columns (gamma, unit tangent, gamma x unit tangent).
inline Rotation frame_from_jet(const Jet2& j, double immersion_eps = tol::immersion) {
    double s = norm(j.v);
    if (s <= immersion_eps) fail(errc::not_immersed, "tangent vanishes");
    Vec3 tu = j.v / s;
    return Rotation(Mat3::from_columns(j.p, tu, cross(j.p, tu)));
}

struct CurveExpr;
using CurvePtr = std::shared_ptr<const CurveExpr>;

// Piecewise-affine monotone map given by breakpoints (t_i, value_i).
struct PiecewiseAffine {
    std::vector<std::pair<double, double>> pts; // sorted by first

    // value and slope at t; at a breakpoint the right-hand piece wins.
    std::pair<double, double> eval(double t) const {
        size_t k = 1;
        while (k + 1 < pts.size() && t >= pts[k].first) ++k;
        double t0 = pts[k - 1].first, v0 = pts[k - 1].second;
        double t1 = pts[k].first, v1 = pts[k].second;
        double slope = (v1 - v0) / (t1 - t0);
        return {v0 + slope * (t - t0), slope};
    }

    static PiecewiseAffine affine(double v0, double v1) { return {{{0.0, v0}, {1.0, v1}}}; }
};

namespace node {

struct NuTheta {
    double theta;
};

// nu_theta traversed `laps` times: nu_theta(laps * t mod 1). nu^k is laps=k at theta=pi/4.
struct NuPow {
    double theta;
    int laps;
};

// The generator curve g_s, one full traversal over t in [0,1] (2*pi of phase).
struct GeneratorG {
    double s;
};

// f1(s1,s2)(t) = Gamma_{s2}(s1/3)^{-1} Gamma_{s2}(2*pi*t + s1/3) e1.
struct GeneratorF1 {
    double s1, s2;
    Mat3 align; // Gamma_{s2}(s1/3)^{-1}, precomputed
};

struct GeodesicArc {
    Vec3 p, q;
    double beta; // angle between p and q
};

struct Constant {
    Vec3 p;
};

struct Sampled {
    int n = 0;                    // grid points, t_i = i/(n-1)
    std::vector<Vec3> p, d1, d2;  // position and derivative columns
};

struct Concat {
    CurvePtr left, right;
};

struct Rotate {
    Mat3 q;
    CurvePtr inner;
};

struct FrameProduct {
    CurvePtr base, inner;
};

struct Reparam {
    CurvePtr inner;
    PiecewiseAffine map;
};

// Affine window t -> a + (b-a) t, evaluated modulo 1 (inner must be closed if it wraps).
struct Window {
    CurvePtr inner;
    double a, b;
};

// Normalized trig polynomial: component i is sum of harmonics in 2*pi*t.
struct TrigProj {
    std::vector<double> c0;                 // 3 constants
    std::vector<std::vector<double>> ck;    // [3][m] cos coefficients
    std::vector<std::vector<double>> sk;    // [3][m] sin coefficients
};

// Normalized polynomial curve u(t) = sum coeff[i][j] t^j.
struct PolyProj {
    std::vector<std::vector<double>> coeff; // [3][deg+1]
};

// Normalized image of a latitude circle under a linear map:
// gamma(t) = normalize(L * c(u0 + (u1-u0) t)), c(u) = (sin(rho) cos u, sin(rho) sin u, cos(rho)).
struct ConicArc {
    Mat3 L;
    double rho, u0, u1;
};

// Gamma_base(tau(t)) * nu_theta(phi(t) mod 1); base == nullptr means identity frame.
// Tau and phi are piecewise affine; this one node covers the grafting operator and
// every displayed loop-pushing homotopy formula.
struct LoopProduct {
    CurvePtr base;
    PiecewiseAffine tau, phi;
    double theta;
};

} // namespace node

struct CurveExpr {
    std::variant<node::NuTheta, node::NuPow, node::GeneratorG, node::GeneratorF1, node::GeodesicArc,
                 node::Constant, node::Sampled, node::Concat, node::Rotate, node::FrameProduct,
                 node::Reparam, node::Window, node::TrigProj, node::PolyProj, node::ConicArc,
                 node::LoopProduct>
        n;
};

template <class T>
CurvePtr make_curve(T&& node) {
    return std::make_shared<CurveExpr>(CurveExpr{std::forward<T>(node)});
}

Jet2 eval2(const CurvePtr& c, double t);

namespace detail {

inline double wrap01(double u) {
    if (u >= 0.0 && u <= 1.0) return u;
    double w = u - std::floor(u);
    return w;
}

inline Jet2 eval_nu_theta(double theta, double phase, double dphase) {
    // nu_theta(u) = (cos^2 th + sin^2 th cos(2 pi u), sin th sin(2 pi u), cos th sin th (1 - cos(2 pi u)))
    double ct = std::cos(theta), st = std::sin(theta);
    double w = two_pi * phase;
    double cw = std::cos(w), sw = std::sin(w);
    Vec3 p{ct * ct + st * st * cw, st * sw, ct * st * (1 - cw)};
    Vec3 d{-st * st * sw, st * cw, ct * st * sw};
    Vec3 dd{-st * st * cw, -st * sw, ct * st * cw};
    double k = two_pi * dphase;
    return {p, d * k, dd * k * k};
}

// g_s and derivatives with respect to the 2*pi-periodic phase u.
inline void generator_g_jet(double s, double u, Vec3& g, Vec3& dg, Vec3& ddg) {
    const double r = std::numbers::sqrt2 / 2;
    double ss = std::sin(s), cs = std::cos(s);
    double cu = std::cos(u), su = std::sin(u);
    double c3 = std::cos(3 * u), s3 = std::sin(3 * u);
    Vec3 a0{ss * cu, ss * su, cs};
    Vec3 a1{-su, cu, 0};
    Vec3 a2{-cs * cu, -cs * su, ss};
    Vec3 da0{-ss * su, ss * cu, 0};
    Vec3 da1{-cu, -su, 0};
    Vec3 da2{cs * su, -cs * cu, 0};
    Vec3 dda0{-ss * cu, -ss * su, 0};
    Vec3 dda1{su, -cu, 0};
    Vec3 dda2{cs * cu, cs * su, 0};
    g = (a0 + a1 * c3 + a2 * s3) * r;
    dg = (da0 + da1 * c3 - a1 * (3 * s3) + da2 * s3 + a2 * (3 * c3)) * r;
    ddg = (dda0 + dda1 * c3 - da1 * (6 * s3) - a1 * (9 * c3) + dda2 * s3 + da2 * (6 * c3) -
           a2 * (9 * s3)) *
          r;
}

inline Jet2 eval_generator_g(double s, double t) {
    double u = two_pi * t;
    Vec3 g, dg, ddg;
    generator_g_jet(s, u, g, dg, ddg);
    return {g, dg * two_pi, ddg * (two_pi * two_pi)};
}

struct Evaluator {
    double t;

    Jet2 operator()(const node::NuTheta& nd) const { return eval_nu_theta(nd.theta, t, 1.0); }

    Jet2 operator()(const node::NuPow& nd) const {
        double u = wrap01(nd.laps * t - std::floor(nd.laps * t));
        return eval_nu_theta(nd.theta, u, double(nd.laps));
    }

    Jet2 operator()(const node::GeneratorG& nd) const { return eval_generator_g(nd.s, t); }

    Jet2 operator()(const node::GeneratorF1& nd) const {
        double u = two_pi * t + nd.s1 / 3.0;
        Vec3 g, dg, ddg;
        generator_g_jet(nd.s2, u, g, dg, ddg);
        return {nd.align * g, nd.align * dg * two_pi, nd.align * ddg * (two_pi * two_pi)};
    }

    Jet2 operator()(const node::GeodesicArc& nd) const {
        double b = nd.beta, sb = std::sin(b);
        Vec3 p = (nd.p * std::sin((1 - t) * b) + nd.q * std::sin(t * b)) / sb;
        Vec3 v = (nd.p * (-b * std::cos((1 - t) * b)) + nd.q * (b * std::cos(t * b))) / sb;
        return {p, v, p * (-b * b)};
    }

    Jet2 operator()(const node::Constant& nd) const { return {nd.p, {0, 0, 0}, {0, 0, 0}}; }

    Jet2 operator()(const node::Sampled& nd) const {
        const int n = nd.n;
        const double h = 1.0 / (n - 1);
        int i = std::min(int(t * (n - 1)), n - 2);
        double s = t * (n - 1) - i;
        double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        // quintic Hermite basis and its first two derivatives in s
        double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
        double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
        double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
        double H3 = 10 * s3 - 15 * s4 + 6 * s5;
        double H4 = -4 * s3 + 7 * s4 - 3 * s5;
        double H5 = 0.5 * s3 - s4 + 0.5 * s5;
        double dH0 = -30 * s2 + 60 * s3 - 30 * s4;
        double dH1 = 1 - 18 * s2 + 32 * s3 - 15 * s4;
        double dH2 = s - 4.5 * s2 + 6 * s3 - 2.5 * s4;
        double dH3 = 30 * s2 - 60 * s3 + 30 * s4;
        double dH4 = -12 * s2 + 28 * s3 - 15 * s4;
        double dH5 = 1.5 * s2 - 4 * s3 + 2.5 * s4;
        double eH0 = -60 * s + 180 * s2 - 120 * s3;
        double eH1 = -36 * s + 96 * s2 - 60 * s3;
        double eH2 = 1 - 9 * s + 18 * s2 - 10 * s3;
        double eH3 = 60 * s - 180 * s2 + 120 * s3;
        double eH4 = -24 * s + 84 * s2 - 60 * s3;
        double eH5 = 3 * s - 12 * s2 + 10 * s3;
        const Vec3 &p0 = nd.p[i], &p1 = nd.p[i + 1];
        Vec3 v0 = nd.d1[i] * h, v1 = nd.d1[i + 1] * h;
        Vec3 a0 = nd.d2[i] * (h * h), a1 = nd.d2[i + 1] * (h * h);
        Vec3 P = p0 * H0 + v0 * H1 + a0 * H2 + p1 * H3 + v1 * H4 + a1 * H5;
        Vec3 D = p0 * dH0 + v0 * dH1 + a0 * dH2 + p1 * dH3 + v1 * dH4 + a1 * dH5;
        Vec3 E = p0 * eH0 + v0 * eH1 + a0 * eH2 + p1 * eH3 + v1 * eH4 + a1 * eH5;
        return {P, D / h, E / (h * h)};
    }

    Jet2 operator()(const node::Concat& nd) const {
        if (t < 0.5) {
            Jet2 j = eval2(nd.left, 2 * t);
            return {j.p, j.v * 2, j.a * 4};
        }
        Jet2 j = eval2(nd.right, 2 * t - 1);
        return {j.p, j.v * 2, j.a * 4};
    }

    Jet2 operator()(const node::Rotate& nd) const {
        Jet2 j = eval2(nd.inner, t);
        return {nd.q * j.p, nd.q * j.v, nd.q * j.a};
    }

    Jet2 operator()(const node::FrameProduct& nd) const;
    Jet2 operator()(const node::LoopProduct& nd) const;

    Jet2 operator()(const node::Reparam& nd) const {
        auto [u, k] = nd.map.eval(t);
        Jet2 j = eval2(nd.inner, std::min(std::max(u, 0.0), 1.0));
        return {j.p, j.v * k, j.a * k * k};
    }

    Jet2 operator()(const node::Window& nd) const {
        double u = nd.a + (nd.b - nd.a) * t;
        double k = nd.b - nd.a;
        Jet2 j = eval2(nd.inner, u >= 0.0 && u <= 1.0 ? u : wrap01(u));
        return {j.p, j.v * k, j.a * k * k};
    }

    Jet2 operator()(const node::TrigProj& nd) const {
        Vec3 u{nd.c0[0], nd.c0[1], nd.c0[2]}, du, ddu;
        for (size_t k = 0; k < nd.ck[0].size(); ++k) {
            double w = two_pi * double(k + 1);
            double cw = std::cos(w * t), sw = std::sin(w * t);
            for (int c = 0; c < 3; ++c) {
                double A = nd.ck[c][k], B = nd.sk[c][k];
                double val = A * cw + B * sw;
                double d = (-A * sw + B * cw) * w;
                double dd = -(A * cw + B * sw) * w * w;
                if (c == 0) { u.x += val; du.x += d; ddu.x += dd; }
                if (c == 1) { u.y += val; du.y += d; ddu.y += dd; }
                if (c == 2) { u.z += val; du.z += d; ddu.z += dd; }
            }
        }
        return normalize_jet(u, du, ddu);
    }

    Jet2 operator()(const node::PolyProj& nd) const {
        Vec3 u, du, ddu;
        for (int c = 0; c < 3; ++c) {
            const auto& co = nd.coeff[c];
            double f = 0, d = 0, dd = 0;
            for (int j = int(co.size()) - 1; j >= 0; --j) {
                dd = dd * t + 2 * d;
                d = d * t + f;
                f = f * t + co[j];
            }
            if (c == 0) { u.x = f; du.x = d; ddu.x = dd; }
            if (c == 1) { u.y = f; du.y = d; ddu.y = dd; }
            if (c == 2) { u.z = f; du.z = d; ddu.z = dd; }
        }
        return normalize_jet(u, du, ddu);
    }

    Jet2 operator()(const node::ConicArc& nd) const {
        double u = nd.u0 + (nd.u1 - nd.u0) * t;
        double k = nd.u1 - nd.u0;
        double sr = std::sin(nd.rho), cr = std::cos(nd.rho);
        Vec3 c{sr * std::cos(u), sr * std::sin(u), cr};
        Vec3 dc{-sr * std::sin(u), sr * std::cos(u), 0};
        Vec3 ddc{-sr * std::cos(u), -sr * std::sin(u), 0};
        return normalize_jet(nd.L * c, nd.L * dc * k, nd.L * ddc * (k * k));
    }
};

} // namespace detail

inline Jet2 eval2(const CurvePtr& c, double t) {
    if (!(t >= -1e-12 && t <= 1.0 + 1e-12)) fail(errc::out_of_domain, "t outside [0,1]");
    t = std::min(std::max(t, 0.0), 1.0);
    return std::visit(detail::Evaluator{t}, c->n);
}

inline Vec3 position(const CurvePtr& c, double t) { return eval2(c, t).p; }

// ---- constructors -----------------------------------------------------------

inline CurvePtr nu_theta(double theta) {
    if (!(theta > 0 && theta < pi)) fail(errc::schema_error, "nu_theta requires theta in (0,pi)");
    return make_curve(node::NuTheta{theta});
}

inline CurvePtr nu_pow(double theta, int laps) {
    if (!(theta > 0 && theta < pi)) fail(errc::schema_error, "nu_pow requires theta in (0,pi)");
    if (laps < 1) fail(errc::schema_error, "nu_pow requires laps >= 1");
    return make_curve(node::NuPow{theta, laps});
}

// nu^k from the introduction: the pi/4 circle drawn k times.
inline CurvePtr nu_k(int k) { return nu_pow(pi / 4, k); }

inline CurvePtr nu() { return nu_theta(pi / 4); }

inline CurvePtr generator_g(double s) { return make_curve(node::GeneratorG{s}); }

inline CurvePtr make_generator_f1(double s1, double s2) {
    if (!(s1 >= -1e-12 && s1 <= two_pi + 1e-12)) fail(errc::schema_error, "f1 requires s1 in [0,2pi]");
    if (!(s2 >= -1e-12 && s2 <= pi + 1e-12)) fail(errc::schema_error, "f1 requires s2 in [0,pi]");
    double a = s1 / 3.0;
    Vec3 g, dg, ddg;
    detail::generator_g_jet(s2, a, g, dg, ddg);
    Rotation A = frame_from_jet({g, dg, ddg});
    return make_curve(node::GeneratorF1{s1, s2, A.m.transposed()});
}

inline CurvePtr geodesic_arc(const Vec3& p, const Vec3& q) {
    Vec3 pu = normalized(p), qu = normalized(q);
    double beta = unit_angle(pu, qu);
    if (beta < 1e-9 || beta > pi - 1e-9)
        fail(errc::schema_error, "geodesic_arc requires independent, non-antipodal endpoints");
    return make_curve(node::GeodesicArc{pu, qu, beta});
}

inline CurvePtr constant_curve(const Vec3& p) { return make_curve(node::Constant{normalized(p)}); }

inline CurvePtr concat_star(const CurvePtr& l, const CurvePtr& r, bool require_smooth = false) {
    Jet2 a = eval2(l, 1.0), b = eval2(r, 0.0);
    if (dist(a.p, b.p) > tol::junction) fail(errc::junction_mismatch, "concat endpoints differ");
    if (require_smooth) {
        Vec3 ta = normalized(a.v), tb = normalized(b.v);
        if (norm(ta - tb) > tol::junction_dir)
            fail(errc::junction_mismatch, "concat tangents differ");
    }
    return make_curve(node::Concat{l, r});
}

inline CurvePtr rotate_curve(const Rotation& q, const CurvePtr& c) {
    return make_curve(node::Rotate{q.m, c});
}

inline CurvePtr frame_product(const CurvePtr& base, const CurvePtr& inner) {
    return make_curve(node::FrameProduct{base, inner});
}

inline CurvePtr reparam(const CurvePtr& inner, PiecewiseAffine map) {
    for (size_t i = 1; i < map.pts.size(); ++i)
        if (!(map.pts[i].first > map.pts[i - 1].first && map.pts[i].second >= map.pts[i - 1].second))
            fail(errc::schema_error, "reparam map must be monotone");
    return make_curve(node::Reparam{inner, std::move(map)});
}

inline CurvePtr window(const CurvePtr& inner, double a, double b) {
    return make_curve(node::Window{inner, a, b});
}

inline CurvePtr trig_proj(std::vector<double> c0, std::vector<std::vector<double>> ck,
                          std::vector<std::vector<double>> sk) {
    return make_curve(node::TrigProj{std::move(c0), std::move(ck), std::move(sk)});
}

inline CurvePtr poly_proj(std::vector<std::vector<double>> coeff) {
    return make_curve(node::PolyProj{std::move(coeff)});
}

inline CurvePtr conic_arc(const Mat3& L, double rho, double u0, double u1) {
    return make_curve(node::ConicArc{L, rho, u0, u1});
}

inline CurvePtr loop_product(CurvePtr base, PiecewiseAffine tau, PiecewiseAffine phi, double theta) {
    return make_curve(node::LoopProduct{std::move(base), std::move(tau), std::move(phi), theta});
}

// Sample any curve onto a uniform Sampled grid (exact jets at the nodes).
inline CurvePtr sampled_from(const CurvePtr& c, int n) {
    node::Sampled s;
    s.n = n;
    s.p.resize(n);
    s.d1.resize(n);
    s.d2.resize(n);
    for (int i = 0; i < n; ++i) {
        Jet2 j = eval2(c, double(i) / (n - 1));
        s.p[i] = j.p;
        s.d1[i] = j.v;
        s.d2[i] = j.a;
    }
    return make_curve(std::move(s));
}

inline CurvePtr sampled_raw(node::Sampled s) {
    if (s.n < 4 || int(s.p.size()) != s.n || int(s.d1.size()) != s.n || int(s.d2.size()) != s.n)
        fail(errc::schema_error, "sampled curve needs n >= 4 matching columns");
    return make_curve(std::move(s));
}

// ---- frame-dependent nodes --------------------------------------------------

namespace detail {

inline Mat3 frame_mat_at(const CurvePtr& c, double t) { return frame_from_jet(eval2(c, t)).m; }

// Frame path derivatives by central differences (one-sided at the ends), step 1e-5.
inline void frame_fd(const CurvePtr& base, double u, Mat3& F, Mat3& dF, Mat3& ddF) {
    const double h = 1e-5;
    F = frame_mat_at(base, u);
    if (u >= h && u <= 1 - h) {
        Mat3 fp = frame_mat_at(base, u + h), fm = frame_mat_at(base, u - h);
        dF = (fp - fm) * (0.5 / h);
        ddF = (fp - F * 2.0 + fm) * (1.0 / (h * h));
    } else if (u < h) {
        Mat3 f1 = frame_mat_at(base, u + h), f2 = frame_mat_at(base, u + 2 * h);
        dF = (F * (-1.5) + f1 * 2.0 - f2 * 0.5) * (1.0 / h);
        ddF = (F - f1 * 2.0 + f2) * (1.0 / (h * h));
    } else {
        Mat3 f1 = frame_mat_at(base, u - h), f2 = frame_mat_at(base, u - 2 * h);
        dF = (F * 1.5 - f1 * 2.0 + f2 * 0.5) * (1.0 / h);
        ddF = (F - f1 * 2.0 + f2) * (1.0 / (h * h));
    }
}

inline Jet2 Evaluator::operator()(const node::FrameProduct& nd) const {
    Mat3 F, dF, ddF;
    frame_fd(nd.base, t, F, dF, ddF);
    Jet2 w = eval2(nd.inner, t);
    Vec3 p = F * w.p;
    Vec3 v = dF * w.p + F * w.v;
    Vec3 a = ddF * w.p + dF * w.v * 2.0 + F * w.a;
    return {p, v, a};
}

inline Jet2 Evaluator::operator()(const node::LoopProduct& nd) const {
    auto [ph, dph] = nd.phi.eval(t);
    Jet2 w = eval_nu_theta(nd.theta, ph - std::floor(ph), dph);
    if (!nd.base) return w;
    auto [u, du] = nd.tau.eval(t);
    u = std::min(std::max(u, 0.0), 1.0);
    Mat3 F, dF, ddF;
    if (du == 0.0) {
        F = frame_mat_at(nd.base, u);
        Vec3 p = F * w.p;
        return {p, F * w.v, F * w.a};
    }
    frame_fd(nd.base, u, F, dF, ddF);
    dF = dF * du;
    ddF = ddF * (du * du);
    Vec3 p = F * w.p;
    Vec3 v = dF * w.p + F * w.v;
    Vec3 a = ddF * w.p + dF * w.v * 2.0 + F * w.a;
    return {p, v, a};
}

} // namespace detail

// Rotate a curve so it starts at e1 with tangent along e2 (standard position).
inline CurvePtr standardize(const CurvePtr& c) {
    Rotation F = frame_from_jet(eval2(c, 0.0));
    return rotate_curve(F.inverse(), c);
}

} // namespace scl

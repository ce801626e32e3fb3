#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "scl/classify.hpp"
#include "scl/curve.hpp"
#include "scl/frame.hpp"
#include "scl/scan.hpp"

namespace scl {

// ---- grafting ----------------------------------------------------------------

struct GraftPlan {
    double theta = pi / 4;
    int n = 0;        // loop pair count, n > 20 C / eps
    double C = 1;     // bound on |Gamma'|, |Gamma''| (Frobenius, sampled)
    double eps = 1;   // perturbation margin of the nu_theta determinant
};

namespace surgerydetail {

// Largest eps such that det(nu(0), nu'(0)+d1, nu''(0)+d2) > 0 for all |d_i| <= eps,
// by bisection over eps with an alternating worst-direction inner solve.
inline double det_margin(double theta) {
    Jet2 j = detail::eval_nu_theta(theta, 0.0, 1.0);
    const Vec3 a = j.p, b = j.v, c = j.a;
    auto worst_det = [&](double eps) {
        Vec3 u = -normalized(cross(c, a));
        Vec3 w = -normalized(cross(a, b));
        double val = 0;
        for (int it = 0; it < 12; ++it) {
            Vec3 gu = cross(c, a) * eps + cross(w, a) * (eps * eps);
            u = -normalized(gu);
            Vec3 gw = cross(a, b) * eps + cross(a, u) * (eps * eps);
            w = -normalized(gw);
            val = det3(a, b + u * eps, c + w * eps);
        }
        return val;
    };
    double lo = 0, hi = 1.0;
    if (worst_det(hi) > 0) return hi; // capped at 1
    while (hi - lo > 1e-4) {
        double mid = 0.5 * (lo + hi);
        (worst_det(mid) > 0 ? lo : hi) = mid;
    }
    return lo;
}

inline double frame_derivative_bound(const CurvePtr& c, int n_samples = 1024) {
    double worst = 0;
    const double h = 1e-4;
    for (int i = 0; i <= n_samples; ++i) {
        double t = std::clamp(double(i) / n_samples, h, 1.0 - h);
        Mat3 f0 = detail::frame_mat_at(c, t - h);
        Mat3 f1 = detail::frame_mat_at(c, t);
        Mat3 f2 = detail::frame_mat_at(c, t + h);
        worst = std::max(worst, frobenius((f2 - f0) * (0.5 / h)));
        worst = std::max(worst, frobenius((f2 - f1 * 2.0 + f0) * (1.0 / (h * h))));
    }
    return worst;
}

} // namespace surgerydetail

// The quantitative plan behind "take n > 20 C / eps": C is a sampled sup of the
// frame derivative norms with a 1.1 safety factor, eps the determinant margin.
inline GraftPlan graft_bound(const CurvePtr& c, double theta, int n_samples = 1024) {
    if (!(theta > 0 && theta < pi / 2)) fail(errc::schema_error, "graft needs theta in (0,pi/2)");
    GraftPlan p;
    p.theta = theta;
    p.C = std::max(1.0, 1.1 * surgerydetail::frame_derivative_bound(c, n_samples));
    p.eps = surgerydetail::det_margin(theta);
    p.n = int(std::ceil(20.0 * p.C / p.eps)) + 1;
    return p;
}

inline int graft_plan_n(double C, double eps) { return int(std::ceil(20.0 * C / eps)) + 1; }

// F_{n,theta}(gamma)(t) = Gamma(t) nu_theta^{2n}(t).
inline CurvePtr graft_curve(const CurvePtr& c, double theta, int n) {
    return loop_product(c, PiecewiseAffine::affine(0, 1), PiecewiseAffine::affine(0, 2.0 * n),
                        theta);
}

// Grafts and asserts local convexity on a loop-resolving sample grid.
inline CurvePtr graft(const CurvePtr& c, const GraftPlan& plan, int check_samples = 0) {
    CurvePtr g = graft_curve(c, plan.theta, plan.n);
    int n_check = check_samples > 0 ? check_samples : std::max(4096, 8 * plan.n);
    auto prof = geodesic_curvature_profile(g, n_check);
    if (!prof.locally_convex)
        fail(errc::convexity_failed, "grafted curve failed the determinant test (n too small?)");
    return g;
}

// ---- homotopy paths ----------------------------------------------------------

struct HomotopyPath {
    std::vector<CurvePtr> curves;
    std::vector<char> require_convex; // per step: 1 = locally convex required
    bool valid = false;
    int failed_step = -1;
    double failed_t = 0;
    std::string note;
};

namespace surgerydetail {

inline bool immersed_everywhere(const CurvePtr& c, int n, double* bad_t) {
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        if (norm(eval2(c, t).v) <= tol::immersion) {
            if (bad_t) *bad_t = t;
            return false;
        }
    }
    return true;
}

inline void validate_path(HomotopyPath& path, int n_check) {
    path.valid = true;
    for (size_t i = 0; i < path.curves.size(); ++i) {
        double bad = 0;
        if (!immersed_everywhere(path.curves[i], n_check, &bad)) {
            path.valid = false;
            path.failed_step = int(i);
            path.failed_t = bad;
            path.note = "immersion failed";
            return;
        }
        if (path.require_convex[i]) {
            auto prof = geodesic_curvature_profile(path.curves[i], n_check);
            if (!prof.locally_convex) {
                path.valid = false;
                path.failed_step = int(i);
                path.note = "convexity failed";
                return;
            }
        }
    }
}

} // namespace surgerydetail

// Pushes the grafted loops to t = 0 through the two displayed stages:
//   H1(s)(t) = nu_theta^{2n}(t) on [0,s/2], Gamma((2t-s)/(2-s)) nu_theta^{2n}(t) after;
//   H2(s)(t) = loops at rate 2/(2-s) up to t = 1-s/2, then gamma(2t-1).
// H1 steps must stay locally convex; H2 steps are only required to stay immersed.
inline HomotopyPath push_loops_to_start(const CurvePtr& c, const GraftPlan& plan,
                                        int steps_per_stage = 33, bool validate = true,
                                        int check_samples = 0) {
    const double L = 2.0 * plan.n;
    HomotopyPath path;
    for (int i = 0; i < steps_per_stage; ++i) {
        double s = double(i) / (steps_per_stage - 1);
        PiecewiseAffine tau = s == 0
                                  ? PiecewiseAffine::affine(0, 1)
                                  : PiecewiseAffine{{{0.0, 0.0}, {s / 2, 0.0}, {1.0, 1.0}}};
        path.curves.push_back(loop_product(c, tau, PiecewiseAffine::affine(0, L), plan.theta));
        path.require_convex.push_back(1);
    }
    for (int i = 1; i < steps_per_stage; ++i) {
        double s = double(i) / (steps_per_stage - 1);
        PiecewiseAffine tau{{{0.0, 0.0}, {0.5, 0.0}, {1.0, 1.0}}};
        PiecewiseAffine phi{{{0.0, 0.0}, {1.0 - s / 2, L}, {1.0, L}}};
        path.curves.push_back(loop_product(c, tau, phi, plan.theta));
        path.require_convex.push_back(0);
    }
    if (validate)
        surgerydetail::validate_path(path,
                                     check_samples > 0 ? check_samples : std::max(2048, 4 * plan.n));
    return path;
}

enum class TransferMode { split_prefix, through_base };

// Loop transfer homotopies. split_prefix realizes
//   F_{n1+n2,theta}(gamma) -> nu_theta^{2 n1} * F_{n2,theta}(gamma)
// (a lap-profile interpolation followed by pushing the prefix out of the frame);
// through_base realizes
//   nu^2 * F_{n2,theta}(gamma) -> F_{n2,theta}(nu^2) * gamma
// by sliding the loop window across the concatenation. Every step of either
// form is required to stay locally convex.
inline HomotopyPath transfer_loops(const CurvePtr& c, const GraftPlan& plan, int n1, int n2,
                                   TransferMode mode = TransferMode::split_prefix,
                                   int steps_per_stage = 33, bool validate = true,
                                   int check_samples = 0) {
    HomotopyPath path;
    if (mode == TransferMode::split_prefix) {
        if (n1 + n2 != plan.n) fail(errc::schema_error, "n1 + n2 must equal plan.n");
        const double L = 2.0 * (n1 + n2);
        PiecewiseAffine phi_star{{{0.0, 0.0}, {0.5, 2.0 * n1}, {1.0, L}}};
        for (int i = 0; i < steps_per_stage; ++i) {
            double s = double(i) / (steps_per_stage - 1);
            PiecewiseAffine phi{{{0.0, 0.0},
                                 {0.5, (1 - s) * (L / 2) + s * (2.0 * n1)},
                                 {1.0, L}}};
            path.curves.push_back(loop_product(c, PiecewiseAffine::affine(0, 1), phi, plan.theta));
            path.require_convex.push_back(1);
        }
        for (int i = 1; i < steps_per_stage; ++i) {
            double s = double(i) / (steps_per_stage - 1);
            PiecewiseAffine tau{{{0.0, 0.0}, {s / 2, 0.0}, {1.0, 1.0}}};
            path.curves.push_back(loop_product(c, tau, phi_star, plan.theta));
            path.require_convex.push_back(1);
        }
    } else {
        int n2_ = n2 > 0 ? n2 : plan.n;
        const double L = 2.0 * n2_;
        CurvePtr base = concat_star(nu_k(2), c);
        for (int i = 0; i < 2 * steps_per_stage - 1; ++i) {
            double s = double(i) / (2 * steps_per_stage - 2);
            PiecewiseAffine phi{{{0.0, 0.0},
                                 {(1 - s) / 2, 0.0},
                                 {(2 - s) / 2, L},
                                 {1.0, L}}};
            if (s == 0.0) phi = PiecewiseAffine{{{0.0, 0.0}, {0.5, 0.0}, {1.0, L}}};
            if (s == 1.0) phi = PiecewiseAffine{{{0.0, 0.0}, {0.5, L}, {1.0, L}}};
            path.curves.push_back(loop_product(base, PiecewiseAffine::affine(0, 1), phi, plan.theta));
            path.require_convex.push_back(1);
        }
    }
    if (validate)
        surgerydetail::validate_path(path,
                                     check_samples > 0 ? check_samples : std::max(2048, 4 * plan.n));
    return path;
}

// Doubles plan.n until the path validates (the quantitative bound is only an
// estimate when the frame is reparametrized); reports doublings used.
template <class Builder>
HomotopyPath validated_with_doubling(GraftPlan plan, int max_doublings, int* doublings,
                                     Builder&& build) {
    for (int d = 0; d <= max_doublings; ++d) {
        HomotopyPath p = build(plan);
        if (p.valid) {
            if (doublings) *doublings = d;
            return p;
        }
        plan.n *= 2;
    }
    fail(errc::validity_failed, "homotopy path failed validation after doubling cap");
}

// ---- quaternion factorization through a convex curve ---------------------------

struct ConvexFactors {
    std::vector<Quat> z_prime; // lift increments of gamma_0, all in A
    std::vector<Quat> z;       // z_i = -z'_i
    std::vector<Rotation> Q;   // Q_i = Pi(z_i)
    CurvePtr gamma0;
};

// Slices the lift of a convex curve in X_{z,c} into n factors:
// z'_i = Gamma~((i-1)/n)^{-1} Gamma~(i/n), z = z'_1 ... z'_n.
inline ConvexFactors factor_convex(const Quat& z, int n, int lift_samples = 256) {
    if (n < 1) fail(errc::schema_error, "factor count must be positive");
    if (in_A(z) == AMembership::non_member) fail(errc::not_in_a, "z admits no convex curve");
    ConvexFactors f;
    f.gamma0 = convex_curve_for(pi_project(z));
    int N = n * std::max(1, (lift_samples + n - 1) / n);
    LiftResult lr = lift_curve(f.gamma0, N);
    auto lift_at_t = [&](double t) {
        for (size_t i = 0; i < lr.ts.size(); ++i)
            if (std::abs(lr.ts[i] - t) < 1e-12) return lr.lift[i];
        fail(errc::non_convergence, "lift grid missing a factor node");
    };
    Quat prev{1, 0, 0, 0};
    for (int i = 1; i <= n; ++i) {
        Quat cur = lift_at_t(double(i) / n);
        Quat zi = prev.unit_inverse() * cur;
        f.z_prime.push_back(zi);
        f.z.push_back(-zi);
        f.Q.push_back(pi_project(zi));
        prev = cur;
    }
    return f;
}

// ---- the concatenation family f^[n] -------------------------------------------

// A petal family: an S^2-parametrized curve family with a fixed lift endpoint.
using PetalFamily = std::function<CurvePtr(double, double)>;

struct BuiltFamily {
    ConvexFactors factors;
    std::function<CurvePtr(const std::vector<std::pair<double, double>>&)> make;
};

// Assembles f^[n]_z(s_1..s_n) = f_{z_1}(s_1) * (Q_1 f_{z_2}(s_2)) * ... for
// z = (-1)^n z', z' in A. The library ships the f_1 petal for factors with
// z_i = 1; any other factor needs a caller-supplied family.
inline BuiltFamily build_f_n(const Quat& z, int n,
                             const std::vector<PetalFamily>& petals = {}) {
    Quat zp = n % 2 == 0 ? z : -z;
    BuiltFamily fam;
    fam.factors = factor_convex(zp, n);
    std::vector<PetalFamily> chosen(n);
    for (int i = 0; i < n; ++i) {
        if (i < int(petals.size()) && petals[i]) {
            chosen[i] = petals[i];
        } else if (dist(fam.factors.z[i], Quat{1, 0, 0, 0}) < 1e-9) {
            chosen[i] = [](double a, double b) { return make_generator_f1(a, b); };
        } else {
            fail(errc::missing_petal_family, "no curve family for factor " + std::to_string(i));
        }
    }
    std::vector<Rotation> Q = fam.factors.Q;
    fam.make = [chosen, Q, n](const std::vector<std::pair<double, double>>& s) {
        if (int(s.size()) != n) fail(errc::schema_error, "expected one S^2 point per factor");
        CurvePtr out;
        Rotation acc = Rotation::identity();
        for (int i = 0; i < n; ++i) {
            CurvePtr piece = chosen[i](s[i].first, s[i].second);
            if (i > 0) piece = rotate_curve(acc, piece);
            out = i == 0 ? piece : concat_star(out, piece);
            acc = acc * Q[i];
        }
        return out;
    };
    return fam;
}

} // namespace scl

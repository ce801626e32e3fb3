#pragma once

// The acceptance suite: one entry per criterion, each self-timed, plus the
// derived-constants ledger (trefoil band location, measured plan constants).

#include <chrono>
#include <random>
#include <sstream>

#include "scl/classify.hpp"
#include "scl/corpus.hpp"
#include "scl/degree.hpp"
#include "scl/families.hpp"
#include "scl/frame.hpp"
#include "scl/json_io.hpp"
#include "scl/oracle.hpp"
#include "scl/surgery.hpp"

namespace scl {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

struct TrefoilBand {
    double s2_star = 0;
    double lo = 0, hi = 0; // is_trefoil holds on [lo, hi]
    double rho_at_star = 0;
};

// Locates the s2 value at s1 = 0 where the three double points of f1 coalesce,
// then brackets the interval on which the trefoil detector fires.
inline TrefoilBand locate_trefoil_band() {
    auto rho_of = [&](double s2) {
        auto f = make_generator_f1(0.0, s2);
        ScanOptions opt;
        opt.n_samples = 1024;
        opt.throw_on_degenerate = false;
        bool degen = false;
        auto dps = find_double_points(f, opt, &degen);
        if (degen || dps.size() != 3) return 1e9;
        return std::max({dist(dps[0].image, dps[1].image), dist(dps[0].image, dps[2].image),
                         dist(dps[1].image, dps[2].image)});
    };
    double best = -1, bestr = 1e9;
    for (double s2 = 0.05; s2 < pi - 0.02; s2 += 0.02) {
        double r = rho_of(s2);
        if (r < bestr) {
            bestr = r;
            best = s2;
        }
    }
    double a = best - 0.04, b = best + 0.04;
    const double gr = (std::sqrt(5.0) - 1) / 2;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1v = rho_of(x1), f2v = rho_of(x2);
    for (int i = 0; i < 70; ++i) {
        if (f1v < f2v) {
            b = x2; x2 = x1; f2v = f1v;
            x1 = b - gr * (b - a); f1v = rho_of(x1);
        } else {
            a = x1; x1 = x2; f1v = f2v;
            x2 = a + gr * (b - a); f2v = rho_of(x2);
        }
    }
    TrefoilBand band;
    band.s2_star = 0.5 * (a + b);
    band.rho_at_star = rho_of(band.s2_star);
    auto trefoil_at = [&](double s2) { return is_trefoil(make_generator_f1(0.0, s2), 1024).yes; };
    double step = 1e-8;
    while (step < 1e-3 && trefoil_at(band.s2_star - step)) step *= 2;
    band.lo = band.s2_star - step / 2;
    step = 1e-8;
    while (step < 1e-3 && trefoil_at(band.s2_star + step)) step *= 2;
    band.hi = band.s2_star + step / 2;
    return band;
}

namespace suitedetail {

template <class Fn>
CriterionResult timed(int id, const std::string& name, Fn&& fn) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = fn();
        r.pass = pass;
        r.detail = detail;
    } catch (const error& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Quat random_unit_quat(std::mt19937& rng) {
    std::normal_distribution<double> g;
    return Quat{g(rng), g(rng), g(rng), g(rng)}.normalized();
}

} // namespace suitedetail

class AcceptanceSuite {
  public:
    std::vector<CriterionResult> results;
    TrefoilBand band;
    json derived = json::object();

    void run_all() {
        for (int id = 1; id <= 14; ++id) run(id);
    }

    void run(int id) {
        using suitedetail::timed;
        switch (id) {
            case 1: results.push_back(timed(1, "double-cover algebra", [&] { return c1(); })); break;
            case 2: results.push_back(timed(2, "circle lift endpoint", [&] { return c2(); })); break;
            case 3: results.push_back(timed(3, "generator positivity and symmetry", [&] { return c3(); })); break;
            case 4: results.push_back(timed(4, "generator boundary", [&] { return c4(); })); break;
            case 5: results.push_back(timed(5, "degree of the f1 lift", [&] { return c5(); })); break;
            case 6: results.push_back(timed(6, "convexity criterion vs A-formula", [&] { return c6(); })); break;
            case 7: results.push_back(timed(7, "component table", [&] { return c7(); })); break;
            case 8: results.push_back(timed(8, "grafting sufficiency and conservation", [&] { return c8(); })); break;
            case 9: results.push_back(timed(9, "homotopy path validity", [&] { return c9(); })); break;
            case 10: results.push_back(timed(10, "trefoil band and detectors", [&] { return c10(); })); break;
            case 11: results.push_back(timed(11, "degree of g1 after f1", [&] { return c11(); })); break;
            case 12: results.push_back(timed(12, "g1 on grafted curves", [&] { return c12(); })); break;
            case 13: results.push_back(timed(13, "intersection oracle equivalence", [&] { return c13(); })); break;
            case 14: results.push_back(timed(14, "flower detector", [&] { return c14(); })); break;
            default: fail(errc::schema_error, "no such criterion");
        }
    }

    bool all_passed() const {
        for (auto& r : results)
            if (!r.pass) return false;
        return !results.empty();
    }

  private:
    using Out = std::pair<bool, std::string>;

    Out c1() {
        std::mt19937 rng(101);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            Quat p = suitedetail::random_unit_quat(rng), q = suitedetail::random_unit_quat(rng);
            worst = std::max(worst, frobenius(pi_project(p * q).m - (pi_project(p) * pi_project(q)).m));
            Mat3 a = pi_project(p).m, b = pi_project(-p).m;
            for (int k = 0; k < 9; ++k)
                if (a.m[k] != b.m[k]) return {false, "Pi(-z) != Pi(z) bitwise"};
        }
        std::ostringstream ss;
        ss << "worst homomorphism defect " << worst;
        return {worst < 1e-9, ss.str()};
    }

    Out c2() {
        double worst_end = 0, worst_mid = 0;
        for (int i = 1; i <= 15; ++i) {
            double th = 0.1 * i;
            LiftResult lr = lift_curve(nu_theta(th), 256);
            worst_end = std::max(worst_end, dist(lr.endpoint, Quat{-1, 0, 0, 0}));
            // closed form exp(pi l t) with the circle-axis direction l = cos(th) i + sin(th) k
            // (the paper's own Pi and Gamma displays force this l; see the ledger)
            Quat mid;
            for (size_t k = 0; k < lr.ts.size(); ++k)
                if (std::abs(lr.ts[k] - 0.5) < 1e-12) mid = lr.lift[k];
            worst_mid = std::max(worst_mid, dist(mid, Quat{0, std::cos(th), 0, std::sin(th)}));
        }
        std::ostringstream ss;
        ss << "endpoint defect " << worst_end << ", midpoint defect " << worst_mid;
        return {worst_end < 1e-6 && worst_mid < 1e-6, ss.str()};
    }

    Out c3() {
        double min_det = 1e300;
        for (int i = 0; i < 256; ++i) {
            double s = pi * (i + 0.5) / 256;
            auto g = generator_g(s);
            for (int k = 0; k < 256; ++k) {
                Jet2 j = eval2(g, double(k) / 256);
                min_det = std::min(min_det, det3(j.p, j.v, j.a));
            }
        }
        Mat3 r3;
        r3.m = {-0.5, -std::sqrt(3.0) / 2, 0, std::sqrt(3.0) / 2, -0.5, 0, 0, 0, 1};
        double worst_sym = 0;
        for (int i = 0; i < 64; ++i) {
            double s = pi * (i + 0.5) / 64;
            auto g = generator_g(s);
            for (int k = 0; k < 64; ++k) {
                double t = double(k) / 96; // t + 1/3 stays in [0,1]
                worst_sym = std::max(
                    worst_sym, frobenius(frame_at(g, t + 1.0 / 3).m - (r3 * frame_at(g, t).m)));
            }
        }
        std::ostringstream ss;
        ss << "min det " << min_det << ", symmetry defect " << worst_sym;
        return {min_det > 0 && worst_sym < 1e-7, ss.str()};
    }

    Out c4() {
        double worst = 0;
        for (double s1 : {0.0, 1.0, two_pi - 0.1}) {
            auto f0 = make_generator_f1(s1, 0.0);
            auto fp = make_generator_f1(s1, pi);
            for (int i = 0; i <= 512; ++i) {
                double t = double(i) / 512;
                worst = std::max(worst, norm(position(f0, t) - position(nu_k(4), t)));
                worst = std::max(worst, norm(position(fp, t) - position(nu_k(2), t)));
            }
        }
        std::ostringstream ss;
        ss << "worst boundary defect " << worst;
        return {worst < 1e-7, ss.str()};
    }

    Out c5() {
        F1LiftMap f1m;
        auto quad = degree_to_s3(f1m, 64);
        auto pre = preimage_count_s3(f1m, quat_j, 20);
        derived["f1_lift_degree"] = {{"quadrature", quad.value},
                                     {"rounded", quad.rounded},
                                     {"residual", quad.residual},
                                     {"preimage_sum", pre.rounded},
                                     {"preimages", int(pre.preimages.size())}};
        std::ostringstream ss;
        ss << "quadrature " << quad.value << " -> " << quad.rounded << ", preimage sum "
           << pre.rounded << " from " << pre.preimages.size() << " root(s)";
        bool ok = std::abs(quad.rounded) == 1 && quad.residual < 0.1 && pre.rounded == quad.rounded;
        return {ok, ss.str()};
    }

    Out c6() {
        std::mt19937 rng(606);
        int interior = 0;
        for (int i = 0; i < 5000; ++i) {
            Quat z = suitedetail::random_unit_quat(rng);
            AMembership a = in_A(z);
            AMembership b = in_A(-z);
            bool amem = a != AMembership::non_member, bmem = b != AMembership::non_member;
            if (amem && bmem) return {false, "z and -z both admitted to A"};
            if (a == AMembership::interior) {
                ++interior;
                if (!convex_component_nonempty(pi_project(z)).nonempty)
                    return {false, "interior z with empty X_{Q,c}"};
            }
        }
        std::ostringstream ss;
        ss << interior << "/5000 interior, disjointness held";
        return {true, ss.str()};
    }

    Out c7() {
        auto check = [&](const CurvePtr& c, double want_z, bool want_convex) {
            ComponentClass cc = classify_component(c);
            return dist(cc.endpoint_z, Quat{want_z, 0, 0, 0}) == 0.0 && cc.convex == want_convex;
        };
        bool ok = check(nu(), -1, true) && check(nu_k(3), -1, false) && check(nu_k(2), 1, false) &&
                  check(nu_k(4), 1, false) && check(make_generator_f1(1.0, 1.0), 1, false);
        return {ok, ok ? "nu -> X_{-1,c}; nu^3 -> X_{-1}; nu^2, nu^4, f1(1,1) -> X_1"
                       : "component table mismatch"};
    }

    Out c8() {
        auto corpus = corpus_graft();
        json plans = json::array();
        bool sufficient = true, conserved = true, any_n8_failure = false;
        std::string note;
        for (size_t i = 0; i < corpus.size(); ++i) {
            const auto& c = corpus[i];
            GraftPlan plan = graft_bound(c, pi / 4);
            plans.push_back({{"curve", int(i)}, {"C", plan.C}, {"eps", plan.eps}, {"n", plan.n}});
            CurvePtr g = graft_curve(c, plan.theta, plan.n);
            if (!geodesic_curvature_profile(g, 8192).locally_convex) {
                sufficient = false;
                note += "plan failed on curve " + std::to_string(i) + "; ";
            }
            Quat src = component_sign(c, 1024);
            Quat dst = component_sign(g, std::max(1024, 10 * plan.n));
            if (dist(src, dst) > 1e-6) {
                conserved = false;
                note += "endpoint moved on curve " + std::to_string(i) + "; ";
            }
            // the n/8 probe, also tried at sharper loop angles
            for (double theta : {pi / 4, 1.45, 1.56}) {
                GraftPlan p2 = graft_bound(c, theta);
                int n8 = (p2.n + 7) / 8;
                CurvePtr g8 = graft_curve(c, theta, n8);
                if (!geodesic_curvature_profile(g8, 8192).locally_convex) any_n8_failure = true;
            }
        }
        derived["graft_plans"] = plans;
        std::ostringstream ss;
        ss << (sufficient ? "plans sufficient" : "plan insufficient") << "; "
           << (conserved ? "endpoints conserved" : "endpoint drift") << "; n/8 failure "
           << (any_n8_failure ? "observed" : "NOT observed (20C/eps carries >8x slack on every "
                                             "corpus curve; see decisions ledger)");
        return {sufficient && conserved && any_n8_failure, ss.str() + " " + note};
    }

    Out c9() {
        auto fidelity = [&](const CurvePtr& a, const CurvePtr& b) {
            double w = 0;
            for (int i = 0; i <= 512; ++i) {
                double t = double(i) / 512;
                w = std::max(w, norm(position(a, t) - position(b, t)));
            }
            return w;
        };
        std::ostringstream ss;
        bool ok = true;

        // push on the geodesic and on a perturbed circle
        for (const auto& c : {nu_theta(pi / 2), perturbed_circle_curve(2, 0.2, 4)}) {
            GraftPlan plan = graft_bound(c, pi / 4);
            int doublings = 0;
            HomotopyPath path = validated_with_doubling(plan, 3, &doublings, [&](GraftPlan p) {
                return push_loops_to_start(c, p, 33, true);
            });
            GraftPlan used = plan;
            for (int d = 0; d < doublings; ++d) used.n *= 2;
            double f0 = fidelity(path.curves.front(), graft_curve(c, used.theta, used.n));
            double f1v = fidelity(path.curves.back(),
                                  concat_star(nu_pow(used.theta, 2 * used.n), c));
            ok = ok && path.valid && f0 < 1e-6 && f1v < 1e-6 && doublings <= 3;
            ss << "push: doublings " << doublings << " fidelity " << f0 << "/" << f1v << "; ";
        }

        // transfer, both displayed forms
        {
            auto c = nu_theta(pi / 2);
            GraftPlan plan = graft_bound(c, pi / 4);
            int n1 = plan.n / 2, n2 = plan.n - plan.n / 2;
            int doublings = 0;
            HomotopyPath path = validated_with_doubling(plan, 3, &doublings, [&](GraftPlan p) {
                int m1 = p.n / 2, m2 = p.n - p.n / 2;
                return transfer_loops(c, p, m1, m2, TransferMode::split_prefix, 33, true);
            });
            GraftPlan used = plan;
            for (int d = 0; d < doublings; ++d) used.n *= 2;
            n1 = used.n / 2;
            n2 = used.n - used.n / 2;
            double f0 = fidelity(path.curves.front(), graft_curve(c, used.theta, used.n));
            double f1v = fidelity(path.curves.back(),
                                  concat_star(nu_pow(used.theta, 2 * n1),
                                              graft_curve(c, used.theta, n2)));
            ok = ok && path.valid && f0 < 1e-6 && f1v < 1e-6;
            ss << "transfer61: doublings " << doublings << " fidelity " << f0 << "/" << f1v << "; ";
        }
        {
            auto c = make_generator_f1(1.0, 1.0);
            GraftPlan plan = graft_bound(c, 0.3);
            int doublings = 0;
            HomotopyPath path = validated_with_doubling(plan, 3, &doublings, [&](GraftPlan p) {
                return transfer_loops(c, p, 0, p.n, TransferMode::through_base, 33, true);
            });
            GraftPlan used = plan;
            for (int d = 0; d < doublings; ++d) used.n *= 2;
            CurvePtr fpart = graft_curve(c, used.theta, used.n);
            double f0 = fidelity(path.curves.front(), concat_star(nu_k(2), fpart));
            CurvePtr nu2grafted = graft_curve(nu_k(2), used.theta, used.n);
            double f1v = fidelity(path.curves.back(), concat_star(nu2grafted, c));
            ok = ok && path.valid && f0 < 1e-6 && f1v < 1e-6;
            ss << "transfer63: doublings " << doublings << " fidelity " << f0 << "/" << f1v;
        }
        return {ok, ss.str()};
    }

    Out c10() {
        band = locate_trefoil_band();
        derived["trefoil_band"] = {{"s2_star", band.s2_star},
                                   {"lo", band.lo},
                                   {"hi", band.hi},
                                   {"rho_at_star", band.rho_at_star}};
        bool nonempty = band.hi > band.lo && is_trefoil(make_generator_f1(0.0, band.s2_star), 2048).yes;

        ScanOptions opt;
        opt.n_samples = 2048;
        opt.throw_on_degenerate = false;
        auto d = diagnose(make_generator_f1(0.0, band.s2_star), opt);
        bool structure = d.triple_points.size() == 1 && d.triple_points[0].generic &&
                         d.double_points.size() == 3;

        bool exclusive = true;
        auto all = corpus_graft();
        auto x1 = corpus_x1();
        all.insert(all.end(), x1.begin(), x1.end());
        all.push_back(make_generator_f1(0.0, band.s2_star));
        all.push_back(spherical_limacon());
        for (auto& c : all) {
            ScanOptions o2;
            o2.n_samples = 1024;
            o2.throw_on_degenerate = false;
            auto dd = diagnose(c, o2);
            auto [st, k] = is_star(dd);
            (void)k;
            if (st && is_trefoil(c, dd).yes) exclusive = false;
        }
        std::ostringstream ss;
        ss << "s2* = " << band.s2_star << ", band width " << (band.hi - band.lo)
           << ", triple+3dp " << (structure ? "ok" : "BAD") << ", exclusivity "
           << (exclusive ? "ok" : "BAD");
        return {nonempty && structure && exclusive, ss.str()};
    }

    Out c11() {
        auto run = [&](double rho, int refine) {
            G1F1Map m(rho, 512);
            return degree_s2(m, 256, 0.5, refine);
        };
        auto main_run = run(0.05, 4);
        auto lo = run(0.025, 4);
        auto hi = run(0.075, 4);
        derived["g1_f1_degree"] = {{"value", main_run.value},
                                   {"rounded", main_run.rounded},
                                   {"residual", main_run.residual},
                                   {"rounded_rho_lo", lo.rounded},
                                   {"rounded_rho_hi", hi.rounded}};
        std::ostringstream ss;
        ss << "value " << main_run.value << " -> " << main_run.rounded << " (residual "
           << main_run.residual << "), band halved/raised -> " << lo.rounded << "/" << hi.rounded;
        bool ok = std::abs(main_run.rounded) == 1 && main_run.residual < 0.1 &&
                  lo.rounded == main_run.rounded && hi.rounded == main_run.rounded;
        return {ok, ss.str()};
    }

    Out c12() {
        for (auto& gamma : corpus_x1()) {
            Vec3 v = g1_eval(concat_star(nu_k(2), gamma));
            if (!(v.x == 0.0 && v.y == 0.0 && v.z == -1.0))
                return {false, "nu^2 * gamma did not map to the exact south pole"};
        }
        return {true, "all 10 curves map to exactly (0,0,-1)"};
    }

    Out c13() {
        auto set = oracle_fixture_set(20);
        if (set.size() != 20) return {false, "could not admit 20 fixtures"};
        int total = 0;
        for (auto& c : set) {
            ScanOptions opt;
            opt.n_samples = 1024;
            auto mine = find_double_points(c, opt);
            auto oracle = brute_force_double_points(c, 1024);
            if (mine.size() != oracle.size()) return {false, "count mismatch"};
            for (auto& o : oracle) {
                bool matched = false;
                for (auto& m : mine)
                    if (std::abs(m.t0 - o.t0) < 1e-5 && std::abs(m.t1 - o.t1) < 1e-5) matched = true;
                if (!matched) return {false, "location mismatch"};
            }
            total += int(mine.size());
        }
        return {true, "20 fixtures, " + std::to_string(total) + " double points matched"};
    }

    Out c14() {
        if (band.s2_star == 0) band = locate_trefoil_band();
        auto [one_petal, w1] = is_flower(nu(), Quat{-1, 0, 0, 0}, 0);
        auto flower3 = make_generator_f1(1.5 * pi, band.s2_star);
        auto [three_petal, w3] = is_flower(flower3, Quat{-1, 0, 0, 0}, 1);
        bool nu4_rejected = true;
        try {
            auto [f, w] = is_flower(nu_k(4), Quat{-1, 0, 0, 0}, 1);
            nu4_rejected = !f;
        } catch (const error&) {
            nu4_rejected = false; // endpoint is consistent, so no error expected
        }
        std::ostringstream ss;
        ss << "1-petal " << (one_petal ? "ok" : "BAD") << ", 3-petal "
           << (three_petal ? "ok" : "BAD") << " (visits " << w3.ts.size() << "), nu^4 "
           << (nu4_rejected ? "rejected" : "ACCEPTED");
        return {one_petal && three_petal && nu4_rejected, ss.str()};
    }
};

inline json suite_report_json(const AcceptanceSuite& s) {
    json arr = json::array();
    for (auto& r : s.results)
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
    return arr;
}

} // namespace scl

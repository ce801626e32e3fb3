#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "scl/frame.hpp"
#include "scl/hull.hpp"
#include "scl/scan.hpp"

using namespace scl;

TEST_CASE("curvature profile basics") {
    auto prof = geodesic_curvature_profile(nu_theta(pi / 4), 512);
    CHECK(prof.locally_convex);
    CHECK(prof.curvature_min > 0.9); // circle of radius pi/4 has curvature cot(pi/4) = 1

    auto geo = geodesic_curvature_profile(nu_theta(pi / 2), 512);
    CHECK_FALSE(geo.locally_convex);
    CHECK(std::abs(geo.curvature_min) < 1e-10);
}

TEST_CASE("f1 family is locally convex") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b <= 4; ++b) {
            auto f = make_generator_f1(two_pi * a / 4, pi * b / 4);
            CHECK(is_locally_convex(f, 512));
        }
}

TEST_CASE("simple circle has no double points") {
    ScanOptions opt;
    opt.n_samples = 512;
    CHECK(find_double_points(nu_theta(0.7), opt).empty());
}

TEST_CASE("multiply traversed circles are degenerate") {
    CHECK_THROWS_AS(find_double_points(nu_k(2)), error);
    ScanOptions opt;
    opt.throw_on_degenerate = false;
    bool degen = false;
    auto dps = find_double_points(nu_k(3), opt, &degen);
    CHECK(degen);
    CHECK(dps.empty());
}

TEST_CASE("limacon has exactly one transversal double point") {
    auto lim = fixtures::spherical_limacon();
    ScanOptions opt;
    opt.n_samples = 1024;
    auto dps = find_double_points(lim, opt);
    REQUIRE(dps.size() == 1);
    CHECK_FALSE(dps[0].tangency);
    CHECK(dps[0].sep < tol::double_point);
    CHECK(norm(position(lim, dps[0].t0) - position(lim, dps[0].t1)) < 1e-7);
}

TEST_CASE("oracle equivalence on perturbed circles") {
    auto set = fixtures::oracle_fixture_set(20);
    REQUIRE(set.size() == 20);
    for (auto& c : set) {
        ScanOptions opt;
        opt.n_samples = 1024;
        auto mine = find_double_points(c, opt);
        auto oracle = fixtures::brute_force_double_points(c, 1024);
        REQUIRE(mine.size() == oracle.size());
        for (auto& o : oracle) {
            bool matched = false;
            for (auto& m : mine)
                if (std::abs(m.t0 - o.t0) < 1e-5 && std::abs(m.t1 - o.t1) < 1e-5) matched = true;
            CHECK(matched);
        }
    }
}

TEST_CASE("rotation invariance of diagnostics") {
    auto c = fixtures::spherical_limacon();
    Quat z = Quat{0.3, -0.5, 0.7, 0.2}.normalized();
    auto r = rotate_curve(pi_project(z), c);
    ScanOptions opt;
    opt.n_samples = 1024;
    auto a = find_double_points(c, opt);
    auto b = find_double_points(r, opt);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].t0 - b[i].t0) < 1e-6);
        CHECK(std::abs(a[i].t1 - b[i].t1) < 1e-6);
    }
}

TEST_CASE("non-generic triple point cluster") {
    auto c = fixtures::nongeneric_triple_fixture();
    ScanOptions opt;
    opt.n_samples = 4096;
    opt.throw_on_degenerate = false;
    bool degen = false;
    auto dps = find_double_points(c, opt, &degen);
    REQUIRE_FALSE(degen);
    // the triple cluster plus two ordinary crossings elsewhere on the curve
    REQUIRE(dps.size() == 5);
    int tangencies = 0;
    for (auto& dp : dps) tangencies += dp.tangency ? 1 : 0;
    CHECK(tangencies == 1);
    auto triples = find_triple_points(dps, c);
    REQUIRE(triples.size() == 1);
    CHECK_FALSE(triples[0].generic);
}

TEST_CASE("arcs of the limacon") {
    auto lim = fixtures::spherical_limacon();
    ScanOptions opt;
    opt.n_samples = 1024;
    auto dps = find_double_points(lim, opt);
    REQUIRE(dps.size() == 1);
    auto arcs = find_arcs(lim, dps);
    REQUIRE(arcs.size() == 2);
    // both candidate arcs of the single double point are simple
    CHECK(arcs[0].simple);
    CHECK(arcs[1].simple);
    // sign coherence: recomputing the determinant reproduces the stored sign
    for (auto& arc : arcs) {
        Jet2 jm = eval2(lim, arc.t_minus), jp = eval2(lim, arc.t_plus);
        CHECK((det3(jm.p, jp.v, jm.v) > 0) == arc.positive);
    }
    // the small loop of a locally convex limacon is a positive arc
    int positives = 0;
    for (auto& arc : arcs) positives += arc.positive ? 1 : 0;
    CHECK(positives >= 1);
}

TEST_CASE("cone hull of circles") {
    auto h = cone_hull(nu_theta(pi / 4), 256);
    CHECK_FALSE(h.full_space);
    CHECK(all_on_boundary(h));

    // nu^2 covers the same circle twice: still on the boundary of a proper cone
    auto h2 = cone_hull(nu_k(2), 256);
    CHECK_FALSE(h2.full_space);
    CHECK(all_on_boundary(h2));
}

TEST_CASE("cone hull of a geodesic arc is flat") {
    auto h = cone_hull(geodesic_arc(e1, {0, 1, 0.4}), 128);
    CHECK(h.flat);
    CHECK(all_on_boundary(h));
}

TEST_CASE("full sphere coverage yields R^3") {
    // a great circle plus its rotated copies spans everything
    std::vector<Vec3> pts;
    for (int i = 0; i < 64; ++i) {
        double a = two_pi * i / 64;
        pts.push_back({std::cos(a), std::sin(a), 0});
        pts.push_back({std::cos(a), 0, std::sin(a)});
        pts.push_back({0, std::cos(a), std::sin(a)});
    }
    auto h = cone_hull_of_points(pts);
    CHECK(h.full_space);
}

TEST_CASE("convexity verdicts") {
    CHECK(is_convex_curve(nu_theta(0.5), 512));
    CHECK_FALSE(is_convex_curve(nu_k(3), 512));
    CHECK_FALSE(is_convex_curve(fixtures::spherical_limacon(), 512));
    // open near-geodesic convex curve
    auto arc = conic_arc(Mat3::identity(), 0.3, 0.2, 2.0);
    CHECK(is_convex_curve(arc, 256));
}

TEST_CASE("diagnostics consistency") {
    auto d = diagnose(nu_theta(0.9));
    CHECK(d.convex);
    CHECK(d.double_points.empty());
    CHECK(d.generic);
    CHECK(d.locally_convex);

    auto dl = diagnose(fixtures::spherical_limacon());
    CHECK_FALSE(dl.convex);
    CHECK(dl.generic);
    CHECK(dl.double_points.size() == 1);
}

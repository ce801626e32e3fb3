#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "scl/classify.hpp"
#include "scl/suite.hpp"

using namespace scl;

TEST_CASE("criterion cases") {
    // Q = I: alpha = 0, nonempty
    auto ci = convex_component_nonempty(Rotation::identity());
    CHECK(ci.nonempty);
    CHECK(ci.kind == CriterionCase::fixed_e1);
    CHECK(std::abs(ci.alpha) < 1e-12);

    // rotation by pi about e3 sends e1 to -e1: always empty
    auto ca = convex_component_nonempty(axis_rotation(e3, pi));
    CHECK(ca.kind == CriterionCase::antipodal_e1);
    CHECK_FALSE(ca.nonempty);

    // the interior example z = (1+2i+2k)/3
    Quat z{1.0 / 3, 2.0 / 3, 0, 2.0 / 3};
    auto cz = convex_component_nonempty(pi_project(z));
    CHECK(cz.kind == CriterionCase::independent);
    CHECK(cz.nonempty);
    CHECK(cz.alpha0 > 0);
    CHECK(cz.alpha1 > 0);
}

TEST_CASE("membership in A") {
    CHECK(in_A({1.0 / 3, 2.0 / 3, 0, 2.0 / 3}) == AMembership::interior);
    CHECK(in_A({-1, 0, 0, 0}) == AMembership::boundary_member);
    CHECK(in_A({1, 0, 0, 0}) == AMembership::non_member);
    CHECK_THROWS_AS(in_A({1, 1, 0, 0}), error);
}

TEST_CASE("A and -A are disjoint; interior implies criterion") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    int interior = 0;
    for (int i = 0; i < 400; ++i) {
        Quat z = Quat{g(rng), g(rng), g(rng), g(rng)}.normalized();
        auto a = in_A(z), b = in_A(-z);
        REQUIRE_FALSE((a != AMembership::non_member && b != AMembership::non_member));
        if (a == AMembership::interior) {
            ++interior;
            REQUIRE(convex_component_nonempty(pi_project(z)).nonempty);
        }
    }
    CHECK(interior > 20);
}

TEST_CASE("constructed convex curves are convex and hit their endpoint") {
    // teardrop case (Qe1 = e1)
    for (double alpha : {0.4, 1.2, pi / 2, 2.4}) {
        Rotation Q = axis_rotation(e1, -alpha); // angle from Qe2 to e2 is alpha
        auto cr = convex_component_nonempty(Q);
        REQUIRE(cr.kind == CriterionCase::fixed_e1);
        REQUIRE(cr.nonempty);
        CHECK(std::abs(cr.alpha - alpha) < 1e-12);
        auto c = convex_curve_for(Q);
        Jet2 end = eval2(c, 1.0);
        CHECK(norm(end.p - Q * e1) < 1e-9);
        CHECK(norm(normalized(end.v) - normalized(Q * e2)) < 1e-9);
        CHECK(is_locally_convex(c, 1024));
        CHECK(is_convex_curve(c, 512, true));
    }
    // independent case
    std::mt19937 rng(5);
    std::normal_distribution<double> g;
    int built = 0;
    while (built < 25) {
        Quat z = Quat{g(rng), g(rng), g(rng), g(rng)}.normalized();
        Rotation Q = pi_project(z);
        auto cr = convex_component_nonempty(Q);
        if (!cr.nonempty || cr.kind != CriterionCase::independent) continue;
        ++built;
        auto c = convex_curve_for(Q);
        Jet2 end = eval2(c, 1.0);
        REQUIRE(norm(end.p - Q * e1) < 1e-9);
        REQUIRE(norm(normalized(end.v) - normalized(Q * e2)) < 1e-8);
        REQUIRE(is_locally_convex(c, 512));
        REQUIRE(is_convex_curve(c, 512));
    }
}

TEST_CASE("component classification table") {
    auto cc = classify_component(nu());
    CHECK(dist(cc.endpoint_z, {-1, 0, 0, 0}) == 0.0);
    CHECK(cc.convex);
    CHECK(cc.label == "X_z_c");

    auto c3 = classify_component(nu_k(3));
    CHECK(dist(c3.endpoint_z, {-1, 0, 0, 0}) == 0.0);
    CHECK_FALSE(c3.convex);

    auto c4 = classify_component(nu_k(4));
    CHECK(dist(c4.endpoint_z, {1, 0, 0, 0}) == 0.0);
    CHECK_FALSE(c4.convex);

    auto cf = classify_component(make_generator_f1(1.0, 1.0));
    CHECK(dist(cf.endpoint_z, {1, 0, 0, 0}) == 0.0);
    CHECK_FALSE(cf.convex);

    CHECK_THROWS_AS(classify_component(nu_theta(pi / 2)), error);
}

TEST_CASE("component verdict is stable under reparametrization and refinement") {
    auto base = make_generator_f1(1.0, 1.0);
    auto rp = reparam(base, PiecewiseAffine{{{0, 0}, {0.4, 0.6}, {1, 1}}});
    auto a = classify_component(base, 512);
    auto b = classify_component(rp, 512);
    auto c = classify_component(base, 2048);
    CHECK(dist(a.endpoint_z, b.endpoint_z) == 0.0);
    CHECK(a.label == b.label);
    CHECK(a.label == c.label);
}

TEST_CASE("star detector") {
    // the limacon is the k = 0 star
    auto [s0, k0] = is_star(fixtures::spherical_limacon(), 1024);
    CHECK(s0);
    CHECK(k0 == 0);

    // k = 1 stars sit on one side of the trefoil wall of the f1 family
    TrefoilBand band = locate_trefoil_band();
    auto [s1, k1] = is_star(make_generator_f1(0.0, band.s2_star + 0.02), 2048);
    CHECK(s1);
    CHECK(k1 == 1);
    auto [s1m, k1m] = is_star(make_generator_f1(0.0, band.s2_star - 0.02), 2048);
    CHECK_FALSE(s1m);
    (void)k1m;

    // near nu^4: not a star
    auto [s2, k2] = is_star(make_generator_f1(1.0, 0.2), 2048);
    CHECK_FALSE(s2);
    (void)k2;

    // the trefoil itself is not generic, hence not a star
    auto [s3, k3] = is_star(make_generator_f1(0.0, band.s2_star), 2048);
    CHECK_FALSE(s3);
    (void)k3;
}

TEST_CASE("trefoil detector") {
    TrefoilBand band = locate_trefoil_band();
    CHECK(band.hi > band.lo);

    auto tr = is_trefoil(make_generator_f1(0.0, band.s2_star), 2048);
    REQUIRE(tr.yes);
    // visits are forced to 1/3-spacing by the threefold symmetry
    CHECK(std::abs(tr.t1 - tr.t0 - 1.0 / 3) < 1e-4);
    CHECK(std::abs(tr.t2 - tr.t1 - 1.0 / 3) < 1e-4);

    CHECK_FALSE(is_trefoil(nu_k(3), 1024).yes);
    CHECK_FALSE(is_trefoil(make_generator_f1(0.0, band.s2_star + 0.05), 2048).yes);
    CHECK_FALSE(is_trefoil(fixtures::spherical_limacon(), 1024).yes);
}

TEST_CASE("theta_M") {
    CHECK(std::abs(theta_M({-1, 0, 0, 0}) - pi) < 1e-12);
    // an independent-case value: argument of (Qe1)_2, (Qe1)_3
    Quat z{1.0 / 3, 2.0 / 3, 0, 2.0 / 3};
    Vec3 qe1 = pi_project(z) * e1;
    CHECK(std::abs(theta_M(z) - std::atan2(qe1.z, qe1.y)) < 1e-12);
}

TEST_CASE("flower detector") {
    auto [ok1, w1] = is_flower(nu(), {-1, 0, 0, 0}, 0);
    CHECK(ok1);
    CHECK(w1.ts.empty());
    CHECK(std::abs(w1.theta_m - pi) < 1e-12);

    TrefoilBand band = locate_trefoil_band();
    auto flower3 = make_generator_f1(1.5 * pi, band.s2_star);
    auto [ok3, w3] = is_flower(flower3, {-1, 0, 0, 0}, 1);
    REQUIRE(ok3);
    REQUIRE(w3.ts.size() == 2);
    CHECK(std::abs(w3.ts[0] - 1.0 / 3) < 1e-4);
    CHECK(std::abs(w3.ts[1] - 2.0 / 3) < 1e-4);
    CHECK(w3.thetas[0] < w3.thetas[1]);
    CHECK(w3.thetas[1] < w3.theta_m);

    auto [nu4, w4] = is_flower(nu_k(4), {-1, 0, 0, 0}, 1);
    CHECK_FALSE(nu4);
    (void)w4;

    // endpoint mismatch is an error, not a false verdict
    CHECK_THROWS_AS(is_flower(nu_k(3), {-1, 0, 0, 0}, 1), error);
}

TEST_CASE("g1 values") {
    // deep star: the exact north pole
    Vec3 n = g1_eval(fixtures::spherical_limacon());
    CHECK((n.x == 0.0 && n.y == 0.0 && n.z == 1.0));

    // nu^2 * gamma: the exact south pole
    Vec3 s = g1_eval(concat_star(nu_k(2), make_generator_f1(1.0, 1.0)));
    CHECK((s.x == 0.0 && s.y == 0.0 && s.z == -1.0));

    // far-from-signature plateau member (near nu^4)
    Vec3 p = g1_eval(make_generator_f1(1.0, 0.3));
    CHECK((p.x == 0.0 && p.y == 0.0 && p.z == -1.0));

    // wrong component is an error
    CHECK_THROWS_AS(g1_eval(nu_k(3)), error);

    // trefoil with the triple point at t0 = 0: theta = 0, g1a = pi/2
    TrefoilBand band = locate_trefoil_band();
    Vec3 tr = g1_eval(make_generator_f1(1.5 * pi, band.s2_star));
    CHECK(tr.x > 0.999);
    CHECK(std::abs(tr.y) < 1e-3);
    CHECK(std::abs(tr.z) < 1e-3);
}

TEST_CASE("g1 is banded: side flips across the wall") {
    TrefoilBand band = locate_trefoil_band();
    Vec3 inside = g1_eval(make_generator_f1(0.0, band.s2_star + 0.005));
    Vec3 outside = g1_eval(make_generator_f1(0.0, band.s2_star - 0.005));
    CHECK(inside.z > 0);   // star side of the band
    CHECK(outside.z < 0);  // non-star side
    CHECK(std::abs(inside.z + outside.z) < 0.05); // antisymmetric profile
}

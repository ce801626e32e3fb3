#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scl/curve.hpp"
#include "scl/frame.hpp"

using namespace scl;

TEST_CASE("frame at the basepoint is the identity") {
    CHECK(frobenius(frame_at(nu_theta(0.9), 0.0).m - Mat3::identity()) < 1e-14);
}

TEST_CASE("frame of nu_theta matches the triple matrix product") {
    double th = pi / 4, t = 0.3;
    double c = std::cos(th), s = std::sin(th);
    Mat3 m1, m2, m3;
    m1.m = {c, 0, -s, 0, 1, 0, s, 0, c};
    double cw = std::cos(two_pi * t), sw = std::sin(two_pi * t);
    m2.m = {1, 0, 0, 0, cw, -sw, 0, sw, cw};
    m3.m = {c, 0, s, 0, 1, 0, -s, 0, c};
    Mat3 expected = m1 * m2 * m3;
    CHECK(frobenius(frame_at(nu_theta(th), t).m - expected) < 1e-8);
}

TEST_CASE("frame equivariance under rotation") {
    std::mt19937 rng(23);
    std::normal_distribution<double> g;
    Quat z = Quat{g(rng), g(rng), g(rng), g(rng)}.normalized();
    Rotation Q = pi_project(z);
    auto base = make_generator_f1(0.4, 1.9);
    auto rot = rotate_curve(Q, base);
    for (double t : {0.0, 0.21, 0.77}) {
        Mat3 lhs = frame_at(rot, t).m;
        Mat3 rhs = (Q * frame_at(base, t)).m;
        CHECK(frobenius(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("frame requires an immersion") {
    CHECK_THROWS_AS(frame_at(constant_curve(e1), 0.3), error);
}

TEST_CASE("lift of nu_theta is exp(pi l t) about the circle axis") {
    // The frame of nu_theta rotates about the circle's axis (cos th, 0, sin th),
    // so the lift is exp(pi t (cos th i + sin th k)); it reaches -1 at t = 1.
    for (double th : {0.2, pi / 4, 1.2}) {
        Vec3 axis{std::cos(th), 0, std::sin(th)};
        LiftResult lr = lift_curve(nu_theta(th), 256);
        CHECK(dist(lr.lift.front(), {1, 0, 0, 0}) == 0.0);
        CHECK(dist(lr.endpoint, {-1, 0, 0, 0}) < 1e-6);
        // defining property at every sample: Pi(exp(pi l t)) = Gamma(t)
        for (size_t i = 0; i < lr.ts.size(); i += 16) {
            Quat cf = quat_exp_imaginary(axis * (pi * lr.ts[i]));
            CHECK(frobenius(pi_project(cf).m - lr.frames[i].m) < 1e-9);
        }
        Quat mid;
        bool found = false;
        for (size_t i = 0; i < lr.ts.size(); ++i)
            if (std::abs(lr.ts[i] - 0.5) < 1e-12) {
                mid = lr.lift[i];
                found = true;
            }
        REQUIRE(found);
        Quat expected{0, std::cos(th), 0, std::sin(th)};
        CHECK(dist(mid, expected) < 1e-6);
    }
}

TEST_CASE("lift invariants: projection consistency and branch continuity") {
    LiftResult lr = lift_curve(make_generator_f1(0.8, 1.2), 256);
    for (size_t i = 0; i < lr.ts.size(); ++i) {
        CHECK(frobenius(pi_project(lr.lift[i]).m - lr.frames[i].m) < tol::lift_project);
        if (i) CHECK(dot(lr.lift[i - 1], lr.lift[i]) > 0);
    }
}

TEST_CASE("component signs of the basic curves") {
    CHECK(dist(component_sign(nu()), {-1, 0, 0, 0}) == 0.0);
    CHECK(dist(component_sign(nu_k(2)), {1, 0, 0, 0}) == 0.0);
    CHECK(dist(component_sign(nu_k(3)), {-1, 0, 0, 0}) == 0.0);
    CHECK(dist(component_sign(nu_k(4)), {1, 0, 0, 0}) == 0.0);
    CHECK(dist(component_sign(make_generator_f1(1.0, 1.0)), {1, 0, 0, 0}) == 0.0);
}

TEST_CASE("concatenation multiplicativity of endpoints") {
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; k <= 4; ++k) {
            Quat lhs = component_sign(concat_star(nu_k(j), nu_k(k)));
            Quat rhs = component_sign(nu_k(j)) * component_sign(nu_k(k));
            CHECK(dist(lhs, rhs) < 1e-12);
        }
}

TEST_CASE("endpoint is reparametrization invariant") {
    auto base = make_generator_f1(0.5, 0.9);
    auto rp = reparam(base, PiecewiseAffine{{{0, 0}, {0.3, 0.55}, {1, 1}}});
    CHECK(dist(component_sign(base), component_sign(rp)) < 1e-8);
}

TEST_CASE("lift of a rotated curve starts at the canonical preimage") {
    auto c = rotate_curve(pi_project(quat_j), nu());
    LiftResult lr = lift_curve(c, 128);
    CHECK(frobenius(pi_project(lr.lift.front()).m - lr.frames.front().m) < 1e-9);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scl/curve.hpp"
#include "scl/frame.hpp"

using namespace scl;

namespace {

// Central finite differences of position, for checking analytic jets.
Jet2 fd_jet(const CurvePtr& c, double t, double h = 1e-5) {
    Vec3 pm = position(c, t - h), p0 = position(c, t), pp = position(c, t + h);
    return {p0, (pp - pm) / (2 * h), (pp - p0 * 2.0 + pm) / (h * h)};
}

std::vector<CurvePtr> fixture_curves() {
    return {
        nu_theta(0.4),
        nu_theta(pi / 2),
        nu_k(2),
        generator_g(1.1),
        make_generator_f1(1.0, 2.0),
        geodesic_arc(e1, {0, 1, 1}),
        concat_star(nu(), nu()),
        rotate_curve(pi_project({0.5, 0.5, 0.5, 0.5}), nu_theta(0.8)),
        sampled_from(make_generator_f1(0.3, 0.9), 1024),
        window(nu_k(3), 0.2, 0.8),
    };
}

} // namespace

TEST_CASE("nu_theta evaluation") {
    CHECK(norm(position(nu_theta(pi / 4), 0.0) - e1) < 1e-15);
    // initial tangent is a positive multiple of e2
    Jet2 j = eval2(nu_theta(0.6), 0.0);
    CHECK(j.v.y > 0);
    CHECK(std::abs(j.v.x) < 1e-12);
    CHECK(std::abs(j.v.z) < 1e-12);
}

TEST_CASE("nu_k evaluation") {
    // 2 pi k t = pi at t = 1/4 for k = 2
    CHECK(norm(position(nu_k(2), 0.25) - e3) < 1e-14);
    // nu^k is nu_{pi/4} traversed k times
    for (double t : {0.1, 0.37, 0.9}) {
        double u = 3 * t - std::floor(3 * t);
        CHECK(norm(position(nu_k(3), t) - position(nu(), u)) < 1e-13);
    }
}

TEST_CASE("unit sphere closure across node types") {
    for (auto& c : fixture_curves())
        for (int i = 0; i <= 64; ++i) {
            double t = double(i) / 64;
            CHECK(std::abs(norm(position(c, t)) - 1.0) < 1e-10);
            Jet2 j = eval2(c, t);
            if (norm(j.v) > 1e-9) CHECK(std::abs(dot(j.p, j.v)) < 1e-8 * norm(j.v));
        }
}

TEST_CASE("analytic jets match finite differences") {
    for (auto& c : fixture_curves()) {
        for (double t : {0.13, 0.41, 0.77}) {
            Jet2 a = eval2(c, t);
            Jet2 n = fd_jet(c, t);
            double vs = std::max(norm(a.v), 1.0);
            double as = std::max(norm(a.a), 1.0);
            CHECK(norm(a.v - n.v) / vs < 1e-4);
            CHECK(norm(a.a - n.a) / as < 1e-4);
        }
    }
}

TEST_CASE("out of domain") { CHECK_THROWS_AS(eval2(nu(), 1.5), error); }

TEST_CASE("concat examples") {
    // nu * nu equals nu^2 pointwise
    auto c = concat_star(nu(), nu());
    for (double t : {0.0, 0.2, 0.5, 0.8, 1.0})
        CHECK(norm(position(c, t) - position(nu_k(2), t)) < 1e-13);

    Vec3 q = normalized({0.2, 0.9, 0.1});
    auto g = concat_star(geodesic_arc(e1, q), geodesic_arc(q, e1));
    CHECK(norm(position(g, 0.5) - q) < 1e-13);

    // (nu^2 * gamma)(t) = gamma(2t-1) for t >= 1/2
    auto gamma = make_generator_f1(1.0, 2.0);
    auto cc = concat_star(nu_k(2), gamma);
    for (double t : {0.5, 0.6, 0.93})
        CHECK(norm(position(cc, t) - position(gamma, 2 * t - 1)) < 1e-13);

    CHECK_THROWS_AS(concat_star(geodesic_arc(e1, q), nu()), error);
}

TEST_CASE("rotate examples") {
    auto g = nu_theta(0.5);
    auto r = rotate_curve(Rotation::identity(), g);
    CHECK(norm(position(r, 0.37) - position(g, 0.37)) == 0.0);

    auto rj = rotate_curve(pi_project(quat_j), g);
    CHECK(norm(position(rj, 0.0) - Vec3{-1, 0, 0}) < 1e-14);

    std::mt19937 rng(5);
    std::normal_distribution<double> gg;
    Quat z = Quat{gg(rng), gg(rng), gg(rng), gg(rng)}.normalized();
    auto rq = rotate_curve(pi_project(z), g);
    for (double t : {0.1, 0.6}) CHECK(std::abs(norm(position(rq, t)) - 1.0) < 1e-12);
}

TEST_CASE("frame_product examples") {
    auto base = make_generator_f1(0.7, 1.3);
    auto same = frame_product(base, constant_curve(e1));
    for (double t : {0.0, 0.31, 0.5, 0.99})
        CHECK(norm(position(same, t) - position(base, t)) < 1e-9);

    auto grafted = frame_product(nu_theta(pi / 2), nu_pow(0.3, 40));
    CHECK(norm(position(grafted, 0.0) - e1) < 1e-12);
}

TEST_CASE("f1 boundary values") {
    // f1(s1, 0) = nu^4 and f1(s1, pi) = nu^2, independent of s1
    for (double s1 : {0.0, 0.7, 1.9}) {
        auto f0 = make_generator_f1(s1, 0.0);
        auto fp = make_generator_f1(s1, pi);
        double worst0 = 0, worstp = 0;
        for (int i = 0; i <= 512; ++i) {
            double t = double(i) / 512;
            worst0 = std::max(worst0, norm(position(f0, t) - position(nu_k(4), t)));
            worstp = std::max(worstp, norm(position(fp, t) - position(nu_k(2), t)));
        }
        CHECK(worst0 < 1e-7);
        CHECK(worstp < 1e-7);
    }
}

TEST_CASE("f1 is 2pi periodic in s1") {
    auto a = make_generator_f1(0.0, 1.0);
    auto b = make_generator_f1(two_pi, 1.0);
    for (int i = 0; i <= 64; ++i) {
        double t = double(i) / 64;
        CHECK(norm(position(a, t) - position(b, t)) < 1e-8);
    }
}

TEST_CASE("f1 starts at the standard frame") {
    auto f = make_generator_f1(1.0, 1.0);
    Jet2 j = eval2(f, 0.0);
    CHECK(norm(j.p - e1) < 1e-12);
    CHECK(j.v.y > 0);
    CHECK(std::abs(j.v.x) < 1e-10);
    CHECK(std::abs(j.v.z) < 1e-10);
    // periodic closure
    CHECK(norm(position(f, 1.0) - position(f, 0.0)) < 1e-8);
}

TEST_CASE("generator symmetry: Gamma_s(t + 2pi/3) = R3 Gamma_s(t)") {
    Mat3 r3;
    r3.m = {-0.5, -std::sqrt(3.0) / 2, 0, std::sqrt(3.0) / 2, -0.5, 0, 0, 0, 1};
    for (int i = 0; i < 8; ++i) {
        double s = pi * (i + 0.5) / 8;
        auto g = generator_g(s);
        for (int k = 0; k < 8; ++k) {
            double t = double(k) / 12; // t + 1/3 stays in [0,1]
            Mat3 lhs = frame_at(g, t + 1.0 / 3).m;
            Mat3 rhs = (r3 * frame_at(g, t).m);
            CHECK(frobenius(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("generator positivity on a coarse grid") {
    for (int i = 0; i <= 32; ++i) {
        double s = pi * double(i) / 32;
        auto g = generator_g(s);
        for (int k = 0; k < 64; ++k) {
            Jet2 j = eval2(g, double(k) / 64);
            REQUIRE(det3(j.p, j.v, j.a) > 0);
        }
    }
}

TEST_CASE("reparam and window") {
    auto base = nu_k(2);
    auto rp = reparam(base, PiecewiseAffine{{{0, 0}, {0.25, 0.5}, {1, 1}}});
    CHECK(norm(position(rp, 0.25) - position(base, 0.5)) < 1e-14);
    Jet2 j = eval2(rp, 0.1);
    CHECK(norm(j.v - eval2(base, 0.2).v * 2.0) < 1e-12);

    auto w = window(nu_k(3), 0.5, 1.5); // wraps through the basepoint
    CHECK(norm(position(w, 0.0) - position(nu_k(3), 0.5)) < 1e-14);
    CHECK(norm(position(w, 0.75) - position(nu_k(3), 0.25)) < 1e-13);
}

TEST_CASE("sampled interpolation quality") {
    auto exact = make_generator_f1(0.9, 1.7);
    auto samp = sampled_from(exact, 1024);
    for (double t : {0.123, 0.5, 0.871}) {
        CHECK(norm(position(samp, t) - position(exact, t)) < 1e-9);
        CHECK(norm(eval2(samp, t).v - eval2(exact, t).v) < 1e-6);
    }
}

TEST_CASE("schema bounds") {
    CHECK_THROWS_AS(nu_theta(4.0), error);
    CHECK_THROWS_AS(nu_theta(0.0), error);
    CHECK_THROWS_AS(nu_pow(0.5, 0), error);
    CHECK_THROWS_AS(geodesic_arc(e1, e1), error);
}

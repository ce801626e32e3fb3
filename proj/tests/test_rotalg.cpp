#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "scl/quat.hpp"
#include "scl/rotation.hpp"

using namespace scl;

namespace {

Quat random_unit_quat(std::mt19937& rng) {
    std::normal_distribution<double> g;
    Quat q{g(rng), g(rng), g(rng), g(rng)};
    return q.normalized();
}

double mat_dist(const Mat3& a, const Mat3& b) { return frobenius(a - b); }

} // namespace

TEST_CASE("hamilton product basics") {
    Quat one{1, 0, 0, 0};
    CHECK(dist(one * quat_j, quat_j) == 0.0);
    CHECK(dist(quat_i * quat_j, quat_k) == 0.0);
    // (0.6 + 0.8i)(0.6 - 0.8i) = 0.36 + 0.64 = 1
    Quat p{0.6, 0.8, 0, 0}, q{0.6, -0.8, 0, 0};
    CHECK(dist(p * q, one) < 1e-15);
}

TEST_CASE("hamilton product norm is multiplicative") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g;
    for (int i = 0; i < 200; ++i) {
        Quat p{g(rng), g(rng), g(rng), g(rng)};
        Quat q{g(rng), g(rng), g(rng), g(rng)};
        CHECK(std::abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * p.norm() * q.norm());
    }
}

TEST_CASE("pi_project examples") {
    CHECK(mat_dist(pi_project({1, 0, 0, 0}).m, Mat3::identity()) == 0.0);

    Mat3 djd;
    djd.m = {-1, 0, 0, 0, 1, 0, 0, 0, -1};
    CHECK(mat_dist(pi_project(quat_j).m, djd) == 0.0);

    Quat z{1.0 / 3, 2.0 / 3, 0, 2.0 / 3};
    CHECK(mat_dist(pi_project(z).m, pi_project(-z).m) == 0.0);

    CHECK_THROWS_AS(pi_project({1, 1, 0, 0}), error);
}

TEST_CASE("rot_to_quat examples and ordering") {
    auto [q, mq] = rot_to_quat(Rotation::identity());
    CHECK(dist(q, {1, 0, 0, 0}) == 0.0);
    CHECK(dist(mq, {-1, 0, 0, 0}) == 0.0);

    Mat3 djd;
    djd.m = {-1, 0, 0, 0, 1, 0, 0, 0, -1};
    auto [a, b] = rot_to_quat(Rotation(djd));
    CHECK(dist(a, quat_j) < 1e-12);
    CHECK(dist(b, -quat_j) < 1e-12);

    Mat3 bad;
    bad.m = {2, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK_THROWS_AS(rot_to_quat(Rotation(bad)), error);
}

TEST_CASE("round trip recovers the quaternion pair") {
    std::mt19937 rng(11);
    for (int i = 0; i < 500; ++i) {
        Quat z = random_unit_quat(rng);
        auto [q, mq] = rot_to_quat(pi_project(z));
        double d = std::min(dist(q, z), dist(mq, z));
        CHECK(d < 1e-8);
        CHECK(mat_dist(pi_project(q).m, pi_project(z).m) < 1e-8);
    }
}

TEST_CASE("pi is a homomorphism onto SO(3)") {
    std::mt19937 rng(3);
    for (int i = 0; i < 1000; ++i) {
        Quat p = random_unit_quat(rng), q = random_unit_quat(rng);
        Mat3 lhs = pi_project(p * q).m;
        Mat3 rhs = (pi_project(p) * pi_project(q)).m;
        REQUIRE(mat_dist(lhs, rhs) < 1e-9);
        REQUIRE(is_rotation(pi_project(p).m));
    }
}

TEST_CASE("quaternion exponential") {
    CHECK(dist(quat_exp_imaginary(Vec3{0, 0, 0}), {1, 0, 0, 0}) == 0.0);
    CHECK(dist(quat_exp_imaginary(Vec3{pi / 2, 0, 0}), quat_i) < 1e-15);

    // |v| = pi gives -1 regardless of direction
    double th = 0.3;
    Vec3 v{pi * std::cos(2 * th), 0, pi * std::sin(2 * th)};
    CHECK(dist(quat_exp_imaginary(v), {-1, 0, 0, 0}) < 1e-15);

    CHECK_THROWS_AS(quat_exp_imaginary(Quat{0.5, 1, 0, 0}), error);
}

TEST_CASE("exp is a one-parameter subgroup") {
    std::mt19937 rng(19);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        Vec3 v = normalized({g(rng), g(rng), g(rng)});
        double s = u(rng), t = u(rng);
        Quat lhs = quat_exp_imaginary(v * (s + t));
        Quat rhs = quat_exp_imaginary(v * s) * quat_exp_imaginary(v * t);
        CHECK(dist(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("axis rotation convention") {
    // conjugation by exp(axis * angle/2) rotates by angle about axis
    Rotation r = axis_rotation(e3, pi / 2);
    CHECK(norm(r * e1 - e2) < 1e-14);
    CHECK(norm(r * e2 + e1) < 1e-14);
}

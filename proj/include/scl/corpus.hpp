#pragma once

// Deterministic curve corpora shared by the acceptance suite and the tests.

#include <random>
#include <vector>

#include "scl/curve.hpp"
#include "scl/scan.hpp"

namespace scl {

// Smooth random perturbation of a latitude circle (optionally multi-lap),
// flattened to a Sampled node.
inline CurvePtr perturbed_circle_curve(unsigned seed, double amp = 0.08, int harmonics = 4,
                                       double theta = pi / 3, int laps = 1,
                                       bool as_sampled = true, int grid = 2048) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c0{0, 0, std::cos(theta)};
    int m = std::max(harmonics, laps + 1);
    std::vector<std::vector<double>> ck(3), sk(3);
    for (int c = 0; c < 3; ++c) {
        ck[c].assign(m, 0.0);
        sk[c].assign(m, 0.0);
    }
    ck[0][laps - 1] = std::sin(theta);
    sk[1][laps - 1] = std::sin(theta);
    for (int c = 0; c < 3; ++c)
        for (int k = 0; k < m; ++k) {
            if (k == laps - 1) continue;
            if (laps == 1 && k == 0) continue;
            ck[c][k] += amp * u(rng) / (k + 1);
            sk[c][k] += amp * u(rng) / (k + 1);
        }
    CurvePtr curve = standardize(trig_proj(c0, ck, sk));
    return as_sampled ? sampled_from(curve, grid) : curve;
}

// Spherical limacon (central projection of r = 1 + b cos phi, b > 1): locally
// convex with a single transversal double point; the 1-loop star.
inline CurvePtr spherical_limacon(double b = 1.2, double scale = 0.55) {
    std::vector<double> c0{scale * b / 2, 0, 1};
    std::vector<std::vector<double>> ck{{scale, scale * b / 2}, {0, 0}, {0, 0}};
    std::vector<std::vector<double>> sk{{0, 0}, {scale, scale * b / 2}, {0, 0}};
    return standardize(trig_proj(c0, ck, sk));
}

// Ten immersed curves for the grafting criteria: the geodesic, circles, arcs,
// perturbed Sampled circles and two closed-form members.
inline std::vector<CurvePtr> corpus_graft() {
    return {
        nu_theta(pi / 2),
        nu_theta(0.9),
        geodesic_arc(e1, {std::cos(1.0), std::sin(1.0), 0}),
        perturbed_circle_curve(2, 0.20, 4),
        perturbed_circle_curve(3, 0.15, 5),
        perturbed_circle_curve(5, 0.15, 7),
        perturbed_circle_curve(8, 0.30, 3),
        perturbed_circle_curve(7, 0.16, 9, pi / 3, 1, true, 4096),
        make_generator_f1(1.0, 1.0),
        generator_g(2.0),
    };
}

// Ten locally convex curves with lift endpoint +1 (the domain of g_1).
inline std::vector<CurvePtr> corpus_x1() {
    std::vector<CurvePtr> out{
        make_generator_f1(1.0, 1.0),
        make_generator_f1(2.0, 2.0),
        make_generator_f1(4.0, 0.7),
        make_generator_f1(5.5, 2.6),
        make_generator_f1(0.5, 1.9),
        concat_star(nu_k(2), make_generator_f1(1.0, 1.0)),
    };
    for (unsigned seed : {11u, 12u, 13u, 14u})
        out.push_back(perturbed_circle_curve(seed, 0.02, 4, pi / 4, 2));
    return out;
}

} // namespace scl

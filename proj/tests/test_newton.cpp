#include <array>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "kerrdeco/newton.hpp"

using namespace kerrdeco;

namespace {

ModelParams base_params() {
    ModelParams p;
    p.hbar = 1.0;
    p.omega_s = 1.0;
    p.g_s = 0.5;
    p.r0 = {2.0, 2.0};
    return p;
}

}  // namespace

TEST_CASE("trajectory is the identity at tau = 0") {
    const auto p = base_params();
    const auto r = newton::trajectory(p, newton::zero_bath(p), 0.0);
    CHECK(r.q == p.r0.q);
    CHECK(r.p == p.r0.p);
}

TEST_CASE("trajectory preserves the norm exactly") {
    auto p = base_params();
    p.capital_omega = 0.3;
    p.n_modes = 5;
    newton::BathInitialState bath{{0.1, 0.0, 0.7, 1.3, 0.2}};
    for (double tau = 0.0; tau < 9.0; tau += 0.37) {
        const auto r = newton::trajectory(p, bath, tau);
        CHECK(r.norm_sq() == doctest::Approx(p.r0.norm_sq()).epsilon(1e-14));
    }
}

TEST_CASE("pure Kerr rotation angle: phi = 8 tau for R0^T R0/hbar = 8") {
    auto p = base_params();
    p.omega_s = 0.0;
    const double tau = std::numbers::pi / 8.0;
    const auto r = newton::trajectory(p, newton::zero_bath(p), tau);
    // half-turn: the centroid lands on -R0
    CHECK(r.q == doctest::Approx(-p.r0.q).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(-p.r0.p).epsilon(1e-12));

    const auto rk4 = newton::rk4_trajectory(p, {}, from_tau(p, tau), {.step = 1e-4});
    CHECK(rk4.q == doctest::Approx(r.q).epsilon(1e-8));
    CHECK(rk4.p == doctest::Approx(r.p).epsilon(1e-8));
}

TEST_CASE("composition property of the rotation phase") {
    auto p = base_params();
    p.capital_omega = 0.2;
    p.n_modes = 3;
    newton::BathInitialState bath{{0.4, 0.9, 0.05}};
    const auto sd = build_spectral_density(p);
    const double rate = newton::rotation_rate(p, sd, 0.5 * p.r0.norm_sq(), bath.actions);

    const double tau1 = 0.83, tau2 = 1.91;
    const auto direct = newton::trajectory(p, bath, tau1 + tau2);
    const auto staged = newton::evolve_sample(newton::trajectory(p, bath, tau1), rate, from_tau(p, tau2));
    CHECK(staged.q == doctest::Approx(direct.q).epsilon(1e-12));
    CHECK(staged.p == doctest::Approx(direct.p).epsilon(1e-12));
}

TEST_CASE("physical trajectory is independent of hbar") {
    auto p = base_params();
    p.capital_omega = 0.2;
    p.n_modes = 2;
    newton::BathInitialState bath{{0.3, 0.6}};
    const double t = 1.7;
    const auto r1 = newton::trajectory_at_time(p, bath, t);
    p.hbar = 0.01;
    const auto r2 = newton::trajectory_at_time(p, bath, t);
    CHECK(r1.q == r2.q);
    CHECK(r1.p == r2.p);
}

TEST_CASE("rk4 oracle: harmonic limit matches the closed rotation") {
    auto p = base_params();
    p.g_s = 0.0;
    p.omega_s = 1.3;
    const double t = 1.0;
    const auto rk4 = newton::rk4_trajectory(p, {}, t, {.step = 1e-3});
    const auto exact = rotation_m1(p.omega_s * t) * p.r0;
    CHECK(rk4.q == doctest::Approx(exact.q).epsilon(1e-9));
    CHECK(rk4.p == doctest::Approx(exact.p).epsilon(1e-9));
}

TEST_CASE("rk4 oracle adjudicates the bath phase factor") {
    auto p = base_params();
    p.capital_omega = 1.0;
    p.n_modes = 1;
    // bath point with I_1 = 0.7
    const std::array<PhaseVector, 1> bath_points{PhaseVector{std::sqrt(1.4), 0.0}};
    const auto bath = newton::bath_from_phase_points(bath_points);
    REQUIRE(bath.actions[0] == doctest::Approx(0.7).epsilon(1e-15));

    const double tau = 1.0;
    const auto rk4 = newton::rk4_trajectory(p, bath_points, from_tau(p, tau), {.step = 1e-4});
    const auto hamilton = newton::trajectory(p, bath, tau);
    const auto doubled =
        newton::trajectory<newton::BathPhaseConvention::doubled_bath>(p, bath, tau);

    CHECK(std::abs(rk4.q - hamilton.q) < 1e-8);
    CHECK(std::abs(rk4.p - hamilton.p) < 1e-8);
    // the doubled bath weighting visibly disagrees with the integrated flow
    CHECK(norm(doubled - rk4) > 1e-3);
}

TEST_CASE("rk4 oracle conserves energy") {
    auto p = base_params();
    p.capital_omega = 0.4;
    p.n_modes = 3;
    const std::array<PhaseVector, 3> bath_points{PhaseVector{0.5, -0.2}, PhaseVector{-1.0, 0.3},
                                                 PhaseVector{0.1, 0.9}};
    const auto sd = build_spectral_density(p);
    const double e0 = newton::total_energy(p, sd, p.r0, bath_points);

    const double t_end = from_tau(p, std::numbers::pi);
    const auto state = newton::rk4_full_state(p, bath_points, t_end, {.step = 5e-4});
    const double e1 = newton::total_energy(p, sd, state.system, state.bath);
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-10);
}

TEST_CASE("rk4 rejects a step with excessive energy drift") {
    auto p = base_params();
    p.omega_s = 0.0;
    p.r0 = {6.0, 0.0};  // fast nonlinear rotation
    CHECK_THROWS_AS(
        newton::rk4_trajectory(p, {}, 10.0, {.step = 0.5, .energy_tolerance = 1e-12}),
        std::runtime_error);
}

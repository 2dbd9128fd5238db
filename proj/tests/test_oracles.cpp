#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "kerrdeco/liouville.hpp"
#include "kerrdeco/oracles.hpp"
#include "kerrdeco/quantum.hpp"

using namespace kerrdeco;

namespace {

ModelParams two_mode_params() {
    ModelParams p;
    p.hbar = 1.0;
    p.omega_s = 1.0;
    p.g_s = 0.5;
    p.capital_omega = 0.2;
    p.n_modes = 2;
    p.beta_hbar_omega = 1.0;
    p.r0 = {2.0, 2.0};
    return p;
}

void check_moments_close(const Moments& a, const Moments& b, double tol) {
    CHECK(std::abs(a.centroid.q - b.centroid.q) < tol);
    CHECK(std::abs(a.centroid.p - b.centroid.p) < tol);
    CHECK(std::abs(a.quadratic[0] - b.quadratic[0]) < tol);
    CHECK(std::abs(a.quadratic[1] - b.quadratic[1]) < tol);
    CHECK(std::abs(a.variances[0] - b.variances[0]) < tol);
    CHECK(std::abs(a.variances[1] - b.variances[1]) < tol);
}

}  // namespace

TEST_CASE("fock oracle: coherent-state moments at tau = 0") {
    const auto p = two_mode_params();
    const auto m = oracles::fock_oracle_moments(p, 0.0);
    CHECK(m.centroid.q == doctest::Approx(p.r0.q).epsilon(1e-12));
    CHECK(m.centroid.p == doctest::Approx(p.r0.p).epsilon(1e-12));
    CHECK(m.variances[0] == doctest::Approx(0.5 * p.hbar).epsilon(1e-11));
    CHECK(m.variances[1] == doctest::Approx(0.5 * p.hbar).epsilon(1e-11));
}

TEST_CASE("fock oracle: closed Kerr dynamics") {
    ModelParams p = two_mode_params();
    p.capital_omega = 0.0;
    p.n_modes = 0;
    for (const double tau : {0.3, 1.1, 0.5 * std::numbers::pi}) {
        const auto oracle = oracles::fock_oracle_moments(p, tau);
        const auto closed_form = quantum::moments(p, tau);
        check_moments_close(oracle, closed_form, 1e-10);
    }
    // the pi/2 collapse value itself
    const auto at_half_pi = oracles::fock_oracle_moments(p, 0.5 * std::numbers::pi);
    CHECK(at_half_pi.centroid.norm_sq() / p.hbar ==
          doctest::Approx(8.0 * std::exp(-16.0)).epsilon(1e-8));
}

TEST_CASE("fock oracle: thermal bath summation matches the closed forms") {
    const auto p = two_mode_params();
    for (const double tau : {0.1, 0.5, 1.0}) {
        const auto oracle = oracles::fock_oracle_moments(p, tau);
        const auto closed_form = quantum::moments(p, tau);
        check_moments_close(oracle, closed_form, 1e-8);
    }
}

TEST_CASE("fock oracle: higher-temperature single-mode bath") {
    ModelParams p = two_mode_params();
    p.n_modes = 1;
    p.beta_hbar_omega = 0.3;  // requires a much deeper occupation cutoff
    REQUIRE(oracles::required_bath_truncation(p, 1e-12) > 90);
    for (const double tau : {0.25, 0.8}) {
        const auto oracle = oracles::fock_oracle_moments(p, tau);
        const auto closed_form = quantum::moments(p, tau);
        check_moments_close(oracle, closed_form, 1e-8);
    }
}

TEST_CASE("fock oracle: matrix agrees entrywise with the closed-form matrix") {
    const auto p = two_mode_params();
    const double tau = 0.45;
    const auto oracle = oracles::fock_oracle_density_matrix(p, tau);
    const auto closed_form = quantum::reduced_density_matrix(p, tau);
    REQUIRE(oracle.dim == closed_form.dim);
    double max_err = 0.0;
    for (int n = 0; n < oracle.dim; ++n)
        for (int np = 0; np < oracle.dim; ++np)
            max_err = std::max(max_err, std::abs(oracle.at(n, np) - closed_form.at(n, np)));
    CHECK(max_err < 1e-10);
}

TEST_CASE("fock oracle: truncation violations are rejected") {
    const auto p = two_mode_params();
    oracles::FockOracleConfig cfg;
    cfg.bath_truncation = 2;  // far below the tail bound at beta hbar omega = 1
    CHECK_THROWS_AS(oracles::fock_oracle_density_matrix(p, 0.3, cfg), std::invalid_argument);

    oracles::FockOracleConfig cfg2;
    cfg2.system_truncation = 5;
    CHECK_THROWS_AS(oracles::fock_oracle_density_matrix(p, 0.3, cfg2), std::invalid_argument);
}

TEST_CASE("monte carlo oracle: initial-instant estimates") {
    ModelParams p = two_mode_params();
    const std::array<double, 1> grid{0.0};
    oracles::MonteCarloConfig cfg;
    cfg.n_samples = 50000;
    cfg.rng_seed = 11;
    const auto mc = oracles::montecarlo_liouville_moments(p, grid, cfg);
    REQUIRE(mc.size() == 1);
    CHECK(std::abs(mc[0].mean_q.value - p.r0.q) < 3.0 * mc[0].mean_q.std_error);
    CHECK(std::abs(mc[0].mean_p.value - p.r0.p) < 3.0 * mc[0].mean_p.std_error);
    CHECK(std::abs(mc[0].var_q.value - 0.5 * p.hbar) < 3.0 * mc[0].var_q.std_error);
    CHECK(std::abs(mc[0].var_p.value - 0.5 * p.hbar) < 3.0 * mc[0].var_p.std_error);
}

TEST_CASE("monte carlo oracle: closed-case centroid decay curve") {
    ModelParams p = two_mode_params();
    p.capital_omega = 0.0;
    p.n_modes = 0;
    std::vector<double> grid(50);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 2.0 * i / (grid.size() - 1);
    oracles::MonteCarloConfig cfg;
    cfg.n_samples = 100000;
    cfg.rng_seed = 7;
    const auto mc = oracles::montecarlo_liouville_moments(p, grid, cfg);
    for (const auto& point : mc) {
        const auto closed_form = liouville::moments(p, point.tau);
        CHECK(std::abs(point.mean_q.value - closed_form.centroid.q) < 3.0 * point.mean_q.std_error);
        CHECK(std::abs(point.mean_p.value - closed_form.centroid.p) < 3.0 * point.mean_p.std_error);
    }
}

TEST_CASE("monte carlo oracle: open-reservoir moments") {
    ModelParams p = two_mode_params();
    p.capital_omega = 0.1;
    p.n_modes = 50;
    p.beta_hbar_omega = 0.1;
    const std::array<double, 5> grid{0.4, 1.1, 2.3, 3.9, 5.5};
    oracles::MonteCarloConfig cfg;
    cfg.n_samples = 100000;
    cfg.rng_seed = 3;
    const auto mc = oracles::montecarlo_liouville_moments(p, grid, cfg);
    for (const auto& point : mc) {
        const auto closed_form = liouville::moments(p, point.tau);
        CHECK(std::abs(point.mean_q.value - closed_form.centroid.q) < 3.0 * point.mean_q.std_error);
        CHECK(std::abs(point.mean_p.value - closed_form.centroid.p) < 3.0 * point.mean_p.std_error);
        CHECK(std::abs(point.q_sq.value - closed_form.quadratic[0]) < 3.0 * point.q_sq.std_error);
        CHECK(std::abs(point.p_sq.value - closed_form.quadratic[1]) < 3.0 * point.p_sq.std_error);
        CHECK(std::abs(point.var_q.value - closed_form.variances[0]) < 3.0 * point.var_q.std_error);
        CHECK(std::abs(point.var_p.value - closed_form.variances[1]) < 3.0 * point.var_p.std_error);
    }
}

TEST_CASE("monte carlo oracle: reproducibility and unbiasedness") {
    ModelParams p = two_mode_params();
    const std::array<double, 2> grid{0.5, 1.5};

    SUBCASE("identical seeds give bit-identical estimates") {
        oracles::MonteCarloConfig cfg;
        cfg.n_samples = 20000;
        cfg.rng_seed = 1234;
        const auto a = oracles::montecarlo_liouville_moments(p, grid, cfg);
        const auto b = oracles::montecarlo_liouville_moments(p, grid, cfg);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].mean_q.value == b[i].mean_q.value);
            CHECK(a[i].var_p.value == b[i].var_p.value);
            CHECK(a[i].q_sq.std_error == b[i].q_sq.std_error);
        }
    }
    SUBCASE("doubling the sample count shrinks the error by about sqrt(2)") {
        oracles::MonteCarloConfig small;
        small.n_samples = 40000;
        small.rng_seed = 5;
        oracles::MonteCarloConfig big = small;
        big.n_samples = 80000;
        const auto a = oracles::montecarlo_liouville_moments(p, grid, small);
        const auto b = oracles::montecarlo_liouville_moments(p, grid, big);
        const double ratio = a[1].mean_q.std_error / b[1].mean_q.std_error;
        CHECK(ratio > 1.25);
        CHECK(ratio < 1.60);
    }
    SUBCASE("sample count below the supported floor is rejected") {
        oracles::MonteCarloConfig cfg;
        cfg.n_samples = 5000;
        CHECK_THROWS_AS(oracles::montecarlo_liouville_moments(p, grid, cfg),
                        std::invalid_argument);
    }
    SUBCASE("antithetic pairing keeps estimates unbiased") {
        oracles::MonteCarloConfig cfg;
        cfg.n_samples = 60000;
        cfg.rng_seed = 77;
        cfg.antithetic = true;
        const auto mc = oracles::montecarlo_liouville_moments(p, grid, cfg);
        for (const auto& point : mc) {
            const auto closed_form = liouville::moments(p, point.tau);
            CHECK(std::abs(point.mean_q.value - closed_form.centroid.q) <
                  4.0 * point.mean_q.std_error);
            CHECK(std::abs(point.var_q.value - closed_form.variances[0]) <
                  4.0 * point.var_q.std_error);
        }
    }
}

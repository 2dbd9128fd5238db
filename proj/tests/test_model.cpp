#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "kerrdeco/model.hpp"
#include "kerrdeco/params_json.hpp"

using namespace kerrdeco;

namespace {

// Composite Simpson quadrature, used as an independent oracle for the
// thermodynamic limit of G2.
double simpson(double a, double b, int intervals, double (*f)(double)) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

ModelParams open_params(int n_modes, double capital_omega) {
    ModelParams p;
    p.capital_omega = capital_omega;
    p.n_modes = n_modes;
    return p;
}

}  // namespace

TEST_CASE("spectral density: closed dynamics yields empty couplings") {
    ModelParams p;
    p.capital_omega = 0.0;
    p.n_modes = 50;  // N is irrelevant once the coupling scale vanishes
    const auto sd = build_spectral_density(p);
    CHECK(sd.g_k.empty());
    CHECK(sd.g1_sum == 0.0);
    CHECK(sd.g2_norm == 0.0);
}

TEST_CASE("spectral density: single mode value") {
    const auto sd = build_spectral_density(open_params(1, 1.0));
    REQUIRE(sd.g_k.size() == 1);
    CHECK(sd.g_k[0] == doctest::Approx(std::exp(-std::numbers::pi / 8.0)).epsilon(1e-15));
    CHECK(sd.g1_sum == sd.g_k[0]);
    CHECK(sd.g2_norm == sd.g_k[0]);
}

TEST_CASE("spectral density: N = 50 reproduces the thermodynamic-limit ratio") {
    const auto sd = build_spectral_density(open_params(50, 0.1));
    const double ratio = sd.g2_norm / 0.1;
    CHECK(std::abs(ratio - 0.89) < 0.02 * 0.89);
}

TEST_CASE("spectral density: large-N sum matches the quadrature oracle") {
    const auto sd = build_spectral_density(open_params(10000, 1.0));
    // (G2/Omega)^2 -> integral of exp(-pi u^2) over [-1/2, 1/2]
    const double integral = simpson(-0.5, 0.5, 20000, [](double u) {
        return std::exp(-std::numbers::pi * u * u);
    });
    CHECK(sd.g2_norm * sd.g2_norm == doctest::Approx(integral).epsilon(1e-4));
    // G1/(Omega sqrt(N)) -> integral of exp(-pi u^2 / 2) over the same window
    const double integral_g1 = simpson(-0.5, 0.5, 20000, [](double u) {
        return std::exp(-0.5 * std::numbers::pi * u * u);
    });
    CHECK(sd.g1_sum / std::sqrt(10000.0) == doctest::Approx(integral_g1).epsilon(1e-4));
}

TEST_CASE("spectral density: Gaussian profile is symmetric about N/2") {
    for (const int n : {8, 9, 50, 51}) {
        const auto sd = build_spectral_density(open_params(n, 0.3));
        for (int k = 1; k < n; ++k)
            CHECK(sd.g_k[static_cast<std::size_t>(k - 1)] ==
                  sd.g_k[static_cast<std::size_t>(n - k - 1)]);
    }
}

TEST_CASE("spectral density: Cauchy-Schwarz ordering of the norms") {
    for (const int n : {1, 2, 7, 64, 333}) {
        const auto sd = build_spectral_density(open_params(n, 0.7));
        CHECK(sd.g2_norm <= sd.g1_sum * (1.0 + 1e-15));
        CHECK(sd.g1_sum <= std::sqrt(static_cast<double>(n)) * sd.g2_norm * (1.0 + 1e-15));
    }
}

TEST_CASE("thermal z") {
    ModelParams p;

    SUBCASE("zero-temperature limit") {
        p.beta_hbar_omega = 200.0;
        CHECK(thermal_z(p) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("direct evaluation at beta hbar omega = 0.1") {
        p.beta_hbar_omega = 0.1;
        const double z = thermal_z(p);
        CHECK(z == doctest::Approx(1.0 / std::tanh(0.05)).epsilon(1e-15));
        CHECK(std::abs(z - 2.0 / 0.1) < 0.02);  // high-T series sanity
    }
    SUBCASE("inverse construction") {
        p.beta_hbar_omega = 2.0 * std::atanh(0.5);
        CHECK(thermal_z(p) == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("strictly decreasing, with the scaling limits") {
        double prev = 1e308;
        for (double x = 0.05; x < 6.0; x += 0.17) {
            p.beta_hbar_omega = x;
            const double z = thermal_z(p);
            CHECK(z < prev);
            CHECK(z >= 1.0);
            prev = z;
        }
        p.beta_hbar_omega = 1e-6;
        CHECK(thermal_z(p) * 0.5e-6 == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("rejects non-positive temperature parameter") {
        p.beta_hbar_omega = 0.0;
        CHECK_THROWS_AS(thermal_z(p), std::invalid_argument);
    }
}

TEST_CASE("scaled time conversion") {
    ModelParams p;
    p.hbar = 1.0;
    p.g_s = 0.5;
    CHECK(to_tau(p, 0.0) == 0.0);
    CHECK(to_tau(p, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    p.hbar = 0.01;
    CHECK(to_tau(p, 200.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(from_tau(p, to_tau(p, 17.5)) == doctest::Approx(17.5).epsilon(1e-15));

    p.g_s = 0.0;
    CHECK_THROWS_AS(to_tau(p, 1.0), std::domain_error);
    CHECK_THROWS_AS(from_tau(p, 1.0), std::domain_error);
}

TEST_CASE("parameter validation") {
    ModelParams p;
    p.hbar = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.capital_omega = 0.1;
    p.n_modes = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.beta_hbar_omega = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.omega_bath = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("JSON parameter document round trip") {
    ModelParams p;
    p.hbar = 0.7;
    p.omega_s = 1.3;
    p.g_s = 0.11;
    p.omega_bath = 2.0;
    p.capital_omega = 0.05;
    p.n_modes = 17;
    p.beta_hbar_omega = 0.9;
    p.r0 = {1.25, -0.75};

    const auto j = params_to_json(p);
    const ModelParams q = params_from_json(j);
    CHECK(q.hbar == p.hbar);
    CHECK(q.omega_s == p.omega_s);
    CHECK(q.g_s == p.g_s);
    CHECK(q.omega_bath == p.omega_bath);
    CHECK(q.capital_omega == p.capital_omega);
    CHECK(q.n_modes == p.n_modes);
    CHECK(q.beta_hbar_omega == p.beta_hbar_omega);
    CHECK(q.r0.q == p.r0.q);
    CHECK(q.r0.p == p.r0.p);

    SUBCASE("missing key rejected") {
        auto bad = j;
        bad.erase("q0");
        CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);
    }
    SUBCASE("unknown key rejected") {
        auto bad = j;
        bad["extra"] = 1.0;
        CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);
    }
    SUBCASE("fractional mode count rejected") {
        auto bad = j;
        bad["n_modes"] = 2.5;
        CHECK_THROWS_AS(params_from_json(bad), std::invalid_argument);
    }
    SUBCASE("file loader round trip") {
        const auto path = std::filesystem::temp_directory_path() / "kerrdeco_params_test.json";
        {
            std::ofstream out(path);
            out << j.dump(2);
        }
        const ModelParams loaded = load_params_file(path.string());
        CHECK(loaded.beta_hbar_omega == p.beta_hbar_omega);
        CHECK(loaded.n_modes == p.n_modes);
        CHECK_THROWS_AS(load_params_file("/nonexistent/params.json"), std::runtime_error);
        std::filesystem::remove(path);
    }
}

// Brute-force verifiers, independent of the closed-form paths:
//  - exact joint Fock-basis summation over truncated thermal bath occupations
//    for the quantum observables (the full Hamiltonian is diagonal there);
//  - seeded Monte Carlo sampling of the initial Wigner distribution, with
//    each sample rotated exactly, for the Liouvillian observables.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "liouville.hpp"
#include "model.hpp"
#include "newton.hpp"
#include "quantum.hpp"
#include "rng.hpp"

namespace kerrdeco::oracles {

// ---------------------------------------------------------------------------
// Fock-basis bath summation.

struct FockOracleConfig {
    int bath_truncation = 0;    ///< max occupation K per mode; 0 = derive from tolerance
    int system_truncation = 0;  ///< Fock cutoff n_max; 0 = default rule
    double tolerance = 1e-12;   ///< per-mode thermal tail bound
};

/// Thermal tail bound e^{-b (K+1)} / (1 - e^{-b}) of one truncated mode.
inline double bath_tail(const ModelParams& p, int truncation) {
    return std::exp(-p.beta_hbar_omega * (truncation + 1)) / (1.0 - std::exp(-p.beta_hbar_omega));
}

inline int required_bath_truncation(const ModelParams& p, double eps) {
    int k = static_cast<int>(std::floor(-std::log(eps * (1.0 - std::exp(-p.beta_hbar_omega))) /
                                        p.beta_hbar_omega));
    if (k < 0) k = 0;
    while (bath_tail(p, k) >= eps) ++k;
    return k;
}

namespace detail {

/// Joint thermal sum over all bath occupations {n_k <= K}:
///   sum prod_k (1-r) r^{n_k} e^{-i m hbar t sum_k g_k (n_k + 1/2)}.
/// Enumerated naively (no per-mode factorization) as an odometer loop.
inline std::complex<double> bath_phase_sum(const ModelParams& p, const SpectralDensity& sd, int m,
                                           double t, int truncation) {
    const std::size_t n = sd.g_k.size();
    if (n == 0) return {1.0, 0.0};
    const double states = std::pow(static_cast<double>(truncation) + 1.0, static_cast<double>(n));
    if (states > 6.7e7)
        throw std::invalid_argument("fock oracle: joint bath enumeration too large; reduce N or K");

    const double r = std::exp(-p.beta_hbar_omega);
    const double w0 = 1.0 - r;

    std::vector<int> occ(n, 0);
    std::complex<double> total{0.0, 0.0};
    while (true) {
        double weight = 1.0;
        double energy = 0.0;  // sum_k g_k (n_k + 1/2)
        for (std::size_t k = 0; k < n; ++k) {
            weight *= w0 * std::pow(r, occ[k]);
            energy += sd.g_k[k] * (occ[k] + 0.5);
        }
        total += weight * std::polar(1.0, -m * p.hbar * t * energy);

        std::size_t digit = 0;
        while (digit < n && occ[digit] == truncation) occ[digit++] = 0;
        if (digit == n) break;
        ++occ[digit];
    }
    return total;
}

}  // namespace detail

/// Reduced matrix assembled from raw energy differences of the diagonal joint
/// Hamiltonian plus the explicit thermal bath sum; shares nothing with the
/// closed-form attenuation product.
inline quantum::ReducedDensityMatrix fock_oracle_density_matrix(const ModelParams& p, double tau,
                                                                const FockOracleConfig& cfg = {}) {
    validate(p);
    const double t = from_tau(p, tau);
    const int truncation =
        cfg.bath_truncation > 0 ? cfg.bath_truncation : required_bath_truncation(p, cfg.tolerance);
    if (p.n_modes > 0 && bath_tail(p, truncation) >= cfg.tolerance)
        throw std::invalid_argument("fock oracle: bath truncation violates the thermal tail bound");
    const int n_max = cfg.system_truncation > 0 ? cfg.system_truncation : quantum::default_fock_cutoff(p);
    const double mu = 0.5 * p.r2_over_hbar();
    if (quantum::poisson_tail(mu, n_max) >= cfg.tolerance)
        throw std::invalid_argument("fock oracle: system truncation violates the Poisson tail bound");

    const SpectralDensity sd = build_spectral_density(p);
    const int dim = n_max + 1;
    const double alpha_arg = std::atan2(p.r0.p, p.r0.q);

    std::vector<double> log_amp(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n)
        log_amp[static_cast<std::size_t>(n)] =
            mu > 0.0 ? -0.5 * mu + 0.5 * n * std::log(mu) - 0.5 * std::lgamma(n + 1.0)
                     : (n == 0 ? 0.0 : -1e308);

    std::vector<std::complex<double>> bath_of_m(static_cast<std::size_t>(dim));
    for (int m = 0; m < dim; ++m)
        bath_of_m[static_cast<std::size_t>(m)] = detail::bath_phase_sum(p, sd, m, t, truncation);

    quantum::ReducedDensityMatrix rho;
    rho.dim = dim;
    rho.tau = tau;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    for (int n = 0; n < dim; ++n) {
        for (int np = 0; np <= n; ++np) {
            const int m = n - np;
            const double la = log_amp[static_cast<std::size_t>(n)] + log_amp[static_cast<std::size_t>(np)];
            if (la < quantum::underflow_log_threshold) continue;
            // E(n,.) - E(n',.) over hbar: omega_s m + hbar g_s [(n+1/2)^2 - (n'+1/2)^2]
            const double quartic = (static_cast<double>(n) + 0.5) * (static_cast<double>(n) + 0.5) -
                                   (static_cast<double>(np) + 0.5) * (static_cast<double>(np) + 0.5);
            const double phase = m * alpha_arg - p.omega_s * m * t - p.hbar * p.g_s * quartic * t;
            const std::complex<double> value =
                std::exp(la) * std::polar(1.0, phase) * bath_of_m[static_cast<std::size_t>(m)];
            rho.at(n, np) = value;
            if (m != 0) rho.at(np, n) = std::conj(value);
        }
    }
    return rho;
}

inline Moments fock_oracle_moments(const ModelParams& p, double tau, const FockOracleConfig& cfg = {}) {
    return quantum::moments_from_matrix(p, fock_oracle_density_matrix(p, tau, cfg));
}

/// Per-mode numeric geometric sums for the attenuation product alone:
/// prod_k sum_{j<=K} (1-r) r^j e^{-i j m g_k hbar t}.
inline std::complex<double> fock_attenuation_oracle(const ModelParams& p, int m, double tau,
                                                    int truncation) {
    validate(p);
    const double t = from_tau(p, tau);
    const SpectralDensity sd = build_spectral_density(p);
    const double r = std::exp(-p.beta_hbar_omega);
    std::complex<double> total{1.0, 0.0};
    for (const double g : sd.g_k) {
        std::complex<double> mode{0.0, 0.0};
        double weight = 1.0 - r;
        for (int j = 0; j <= truncation; ++j) {
            mode += weight * std::polar(1.0, -j * m * g * p.hbar * t);
            weight *= r;
        }
        total *= mode;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Monte Carlo sampling of the Liouvillian dynamics.

struct MonteCarloConfig {
    std::size_t n_samples = 100000;
    std::uint64_t rng_seed = 20260808ULL;
    bool antithetic = false;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Estimates at one grid instant, with standard errors from sample variance.
struct McMoments {
    double tau = 0.0;
    McEstimate mean_q, mean_p;
    McEstimate q_sq, p_sq;
    McEstimate var_q, var_p;
    McEstimate mean_var;
};

/// Samples the exact Wigner initial state (system Gaussian of variance
/// hbar/2 around R0, bath Gaussians of variance z hbar/2), rotates each
/// sample exactly with its own conserved actions, and averages. Sample i is a
/// pure function of (seed, i), so runs reproduce bit-identically.
inline std::vector<McMoments> montecarlo_liouville_moments(const ModelParams& p,
                                                           std::span<const double> tau_grid,
                                                           const MonteCarloConfig& cfg = {}) {
    validate(p);
    if (cfg.n_samples < 10000)
        throw std::invalid_argument("montecarlo oracle: n_samples must be at least 10^4");

    const SpectralDensity sd = build_spectral_density(p);
    const double z = thermal_z(p);
    const double sigma_sys = std::sqrt(0.5 * p.hbar);
    const double sigma_bath = std::sqrt(0.5 * z * p.hbar);
    const std::size_t n_modes = sd.g_k.size();
    const std::uint64_t pairs_per_sample = n_modes + 1;

    const std::size_t n = cfg.n_samples;
    std::vector<double> qs(n), ps(n), rate(n);
    for (std::size_t i = 0; i < n; ++i) {
        // antithetic pairs share the underlying draws with flipped signs
        const std::uint64_t draw = cfg.antithetic ? i / 2 : i;
        const double sign = (cfg.antithetic && (i & 1)) ? -1.0 : 1.0;
        const std::uint64_t base = draw * pairs_per_sample;

        const rng::GaussPair sys = rng::gauss_pair_at(cfg.rng_seed, base);
        const double q = p.r0.q + sign * sigma_sys * sys.z0;
        const double pp = p.r0.p + sign * sigma_sys * sys.z1;
        double omega = p.omega_s + p.g_s * (q * q + pp * pp);  // omega_s + 2 g_s I_s
        for (std::size_t k = 0; k < n_modes; ++k) {
            const rng::GaussPair mode = rng::gauss_pair_at(cfg.rng_seed, base + 1 + k);
            const double qk = sigma_bath * mode.z0;
            const double pk = sigma_bath * mode.z1;
            omega += sd.g_k[k] * 0.5 * (qk * qk + pk * pk);
        }
        qs[i] = q;
        ps[i] = pp;
        rate[i] = omega;
    }

    std::vector<McMoments> out;
    out.reserve(tau_grid.size());
    for (const double tau : tau_grid) {
        const double t = from_tau(p, tau);
        rng::KahanSum s_q, s_p, s_q2, s_p2, s_q3, s_p3, s_q4, s_p4;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = rate[i] * t;
            const double c = std::cos(angle), sn = std::sin(angle);
            const double q = c * qs[i] + sn * ps[i];
            const double pp = -sn * qs[i] + c * ps[i];
            const double q2 = q * q, p2 = pp * pp;
            s_q.add(q);
            s_p.add(pp);
            s_q2.add(q2);
            s_p2.add(p2);
            s_q3.add(q2 * q);
            s_p3.add(p2 * pp);
            s_q4.add(q2 * q2);
            s_p4.add(p2 * p2);
        }
        const double inv = 1.0 / static_cast<double>(n);
        const auto reduce = [inv, n](double m1, double m2, double m3, double m4) {
            const double mean = m1 * inv;
            const double raw2 = m2 * inv, raw3 = m3 * inv, raw4 = m4 * inv;
            const double central2 = raw2 - mean * mean;
            const double central4 = raw4 - 4.0 * mean * raw3 + 6.0 * mean * mean * raw2 -
                                    3.0 * mean * mean * mean * mean;
            McEstimate mean_est{mean, std::sqrt(std::max(central2, 0.0) * inv)};
            McEstimate raw2_est{raw2, std::sqrt(std::max(raw4 - raw2 * raw2, 0.0) * inv)};
            const double var = central2 * static_cast<double>(n) / static_cast<double>(n - 1);
            McEstimate var_est{var,
                               std::sqrt(std::max(central4 - central2 * central2, 0.0) * inv)};
            struct Out {
                McEstimate mean, raw2, var;
            };
            return Out{mean_est, raw2_est, var_est};
        };
        const auto rq = reduce(s_q.sum, s_q2.sum, s_q3.sum, s_q4.sum);
        const auto rp = reduce(s_p.sum, s_p2.sum, s_p3.sum, s_p4.sum);

        McMoments m;
        m.tau = tau;
        m.mean_q = rq.mean;
        m.mean_p = rp.mean;
        m.q_sq = rq.raw2;
        m.p_sq = rp.raw2;
        m.var_q = rq.var;
        m.var_p = rp.var;
        m.mean_var = {0.5 * (rq.var.value + rp.var.value),
                      0.5 * std::hypot(rq.var.std_error, rp.var.std_error)};
        out.push_back(m);
    }
    return out;
}

}  // namespace kerrdeco::oracles

// Model parameters of the quartic oscillator coupled to an N-mode
// phase-damping thermal reservoir, the Gaussian spectral distribution of the
// couplings, and the derived constants everything else is built from.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "phase_space.hpp"

namespace kerrdeco {

/// Full physical parameter set.
///
/// hbar is an explicit parameter (not fixed to 1) so that the classical limit
/// can be probed by scaling it at fixed physical time. capital_omega = 0 or
/// n_modes = 0 means closed (reservoir-free) dynamics.
struct ModelParams {
    double hbar = 1.0;             ///< action quantum, > 0
    double omega_s = 1.0;          ///< system harmonic frequency, >= 0
    double g_s = 0.5;              ///< nonlinearity, 1/(action*time), >= 0
    double omega_bath = 1.0;       ///< common bath frequency, > 0
    double capital_omega = 0.0;    ///< coupling scale, >= 0
    int n_modes = 0;               ///< reservoir size N, >= 0
    double beta_hbar_omega = 0.1;  ///< dimensionless inverse temperature, > 0
    PhaseVector r0{2.0, 2.0};      ///< initial centroid (q0, p0)

    double r0_norm_sq() const { return r0.norm_sq(); }

    /// R0^T R0 / hbar, the dimensionless size of the initial displacement.
    double r2_over_hbar() const { return r0.norm_sq() / hbar; }
};

inline void validate(const ModelParams& p) {
    const auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(p.hbar) || p.hbar <= 0.0) throw std::invalid_argument("hbar must be finite and > 0");
    if (bad(p.omega_s) || p.omega_s < 0.0) throw std::invalid_argument("omega_s must be finite and >= 0");
    if (bad(p.g_s) || p.g_s < 0.0) throw std::invalid_argument("g_s must be finite and >= 0");
    if (bad(p.omega_bath) || p.omega_bath <= 0.0)
        throw std::invalid_argument("omega_bath must be finite and > 0");
    if (bad(p.capital_omega) || p.capital_omega < 0.0)
        throw std::invalid_argument("capital_omega must be finite and >= 0");
    if (p.n_modes < 0) throw std::invalid_argument("n_modes must be >= 0");
    if (p.capital_omega > 0.0 && p.n_modes < 1)
        throw std::invalid_argument("n_modes must be >= 1 when capital_omega > 0");
    if (bad(p.beta_hbar_omega) || p.beta_hbar_omega <= 0.0)
        throw std::invalid_argument("beta_hbar_omega must be finite and > 0");
    if (bad(p.r0.q) || bad(p.r0.p)) throw std::invalid_argument("initial centroid must be finite");
}

/// Gaussian spectral distribution of the reservoir couplings together with
/// its first two norms G1 = sum g_k and G2 = sqrt(sum g_k^2).
struct SpectralDensity {
    std::vector<double> g_k;  ///< couplings, index k = 1..N stored at k-1
    double g1_sum = 0.0;
    double g2_norm = 0.0;
};

/// Couplings g_k = (Omega/sqrt(N)) exp[-pi (k - N/2)^2 / (2 N^2)], k = 1..N.
/// Closed dynamics (N = 0 or Omega = 0) yields an empty set with G1 = G2 = 0.
inline SpectralDensity build_spectral_density(const ModelParams& p) {
    validate(p);
    SpectralDensity sd;
    if (p.n_modes == 0 || p.capital_omega == 0.0) return sd;

    const int n = p.n_modes;
    const double k0 = 0.5 * n;  // profile center; half-integer when N is odd
    const double scale = p.capital_omega / std::sqrt(static_cast<double>(n));
    sd.g_k.resize(static_cast<std::size_t>(n));
    double sum = 0.0, sum_sq = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double u = (k - k0) / n;
        const double g = scale * std::exp(-0.5 * std::numbers::pi * u * u);
        sd.g_k[static_cast<std::size_t>(k - 1)] = g;
        sum += g;
        sum_sq += g * g;
    }
    sd.g1_sum = sum;
    sd.g2_norm = std::sqrt(sum_sq);
    return sd;
}

/// Thermal width parameter z = 1/tanh(beta hbar omega / 2) >= 1.
inline double thermal_z(const ModelParams& p) {
    if (!(p.beta_hbar_omega > 0.0) || !std::isfinite(p.beta_hbar_omega))
        throw std::invalid_argument("thermal_z requires beta_hbar_omega > 0");
    return 1.0 / std::tanh(0.5 * p.beta_hbar_omega);
}

/// Dimensionless time tau = hbar g_s t. Degenerate for g_s = 0: use the
/// physical-time entry points of the dynamics in that case.
inline double to_tau(const ModelParams& p, double t) {
    if (p.g_s == 0.0)
        throw std::domain_error("to_tau: g_s = 0 makes the scaled time degenerate; use physical time");
    return p.hbar * p.g_s * t;
}

inline double from_tau(const ModelParams& p, double tau) {
    if (p.g_s == 0.0)
        throw std::domain_error("from_tau: g_s = 0 makes the scaled time degenerate; use physical time");
    return tau / (p.hbar * p.g_s);
}

/// A single evaluation instant carried in both parametrizations.
struct EvalTime {
    double tau = 0.0;
    double t = 0.0;
};

inline EvalTime eval_at_time(const ModelParams& p, double t) { return {p.hbar * p.g_s * t, t}; }

inline EvalTime eval_at_tau(const ModelParams& p, double tau) { return {tau, from_tau(p, tau)}; }

}  // namespace kerrdeco

// Characteristic time scales and quantum-classical correspondence
// diagnostics: decoherence times, revival time, free-particle Ehrenfest time,
// determinism-break time, the divergence D(tau), and the temperature bound.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "liouville.hpp"
#include "model.hpp"
#include "quantum.hpp"

namespace kerrdeco::timescales {

/// First revival instant of the closed dynamics, in scaled time.
inline constexpr double revival_time = std::numbers::pi;

struct DecoherenceTimes {
    double tau_dq = std::numeric_limits<double>::infinity();
    double tau_dl = std::numeric_limits<double>::infinity();
    bool finite = false;  ///< false when the coupling vanishes
};

/// tau_DQ = sqrt(8) (g_s/G2) sinh(b/2), tau_DL = sqrt(8) (g_s/G2) tanh(b/2);
/// their ratio is cosh(b/2) identically.
inline DecoherenceTimes decoherence_times(const ModelParams& p) {
    const SpectralDensity sd = build_spectral_density(p);
    if (sd.g2_norm == 0.0) return {};
    const double common = std::sqrt(8.0) * p.g_s / sd.g2_norm;
    return {common * std::sinh(0.5 * p.beta_hbar_omega),
            common * std::tanh(0.5 * p.beta_hbar_omega), true};
}

// ---------------------------------------------------------------------------
// Free-particle spreading.

struct FreeParticle {
    double mass = 1.0;
    double delta_x0 = 1.0;      ///< initial position spread
    double resolution_m = 2.0;  ///< resolution delta_S = M hbar / 2
    double hbar = 1.0;
};

/// Uncertainty product (hbar/2) sqrt(1 + (hbar t / 2 m dx0^2)^2).
inline double spreading_product(const FreeParticle& fp, double t) {
    const double ratio = fp.hbar * t / (2.0 * fp.mass * fp.delta_x0 * fp.delta_x0);
    return 0.5 * fp.hbar * std::sqrt(1.0 + ratio * ratio);
}

inline double ehrenfest_time(const FreeParticle& fp) {
    return 2.0 * fp.mass * fp.delta_x0 * fp.delta_x0 / fp.hbar;
}

/// t at which the product reaches M hbar / 2; empty when M <= 1.
inline std::optional<double> free_particle_break_time(const FreeParticle& fp) {
    if (!(fp.resolution_m > 1.0)) return std::nullopt;
    return ehrenfest_time(fp) * fp.resolution_m * std::sqrt(1.0 - 1.0 / (fp.resolution_m * fp.resolution_m));
}

// ---------------------------------------------------------------------------
// Determinism-break time of the oscillator.

struct DeterminismBreak {
    double tau_det_exact = std::numeric_limits<double>::quiet_NaN();
    bool bracketed = false;  ///< a sign change was found in (0, pi/2]
    double tau_det_expansion = 0.0;
    double tau_det_closed = 0.0;
};

namespace detail {

inline double damping_sq(const ModelParams& p, double tau) {
    const auto f = quantum::centroid_factors_at_time(p, from_tau(p, tau));
    return quantum::detail::scale_or_zero(2.0 * (f.log_gamma + f.log_lambda));
}

}  // namespace detail

/// Solves 1 - Gamma_1Q^2 Lambda_1Q^2 = (hbar/R0^T R0)(M - 1) for the first
/// root in (0, pi/2] by scan-and-bisect, and evaluates the short-time
/// expansion and the closed-dynamics value.
inline DeterminismBreak determinism_break_time(const ModelParams& p, double resolution_m) {
    validate(p);
    const double r2h = p.r2_over_hbar();
    if (!(resolution_m > 1.0) || !(resolution_m < 1.0 + r2h))
        throw std::invalid_argument("determinism_break_time requires 1 < M < 1 + R0^T R0/hbar");

    const double target = (resolution_m - 1.0) / r2h;
    const double r0sq = p.r0_norm_sq();

    DeterminismBreak out;
    out.tau_det_closed = std::sqrt((resolution_m - 1.0) * p.hbar * p.hbar / (2.0 * r0sq * r0sq));
    const DecoherenceTimes dt = decoherence_times(p);
    if (dt.finite) {
        const double ratio = out.tau_det_closed / dt.tau_dq;
        out.tau_det_expansion =
            out.tau_det_closed /
            std::sqrt(1.0 + ratio * ratio * 2.0 * r2h / (resolution_m - 1.0));
    } else {
        out.tau_det_expansion = out.tau_det_closed;
    }

    const auto residual = [&](double tau) { return 1.0 - detail::damping_sq(p, tau) - target; };
    const int scan_steps = 4096;
    const double upper = 0.5 * std::numbers::pi;
    double lo = 0.0, f_lo = residual(0.0);
    for (int i = 1; i <= scan_steps; ++i) {
        const double hi = upper * i / scan_steps;
        const double f_hi = residual(hi);
        if (f_lo < 0.0 && f_hi >= 0.0) {
            // bisect to 1e-12
            double a = lo, b = hi;
            for (int iter = 0; iter < 200 && b - a > 1e-12; ++iter) {
                const double mid = 0.5 * (a + b);
                if (residual(mid) >= 0.0)
                    b = mid;
                else
                    a = mid;
            }
            out.tau_det_exact = 0.5 * (a + b);
            out.bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quantum-classical divergence.

struct DivergenceRoutes {
    double from_centroids = 0.0;  ///< (1/2)|R_Q^T R_Q - R_L^T R_L|
    double from_variances = 0.0;  ///< |mean variance difference|
    double reduced = 0.0;         ///< |G^2L^2_Q - G^2L^2_L| R0^T R0 / 2
};

inline DivergenceRoutes divergence_routes(const ModelParams& p, double tau) {
    const double t = from_tau(p, tau);
    DivergenceRoutes r;

    const PhaseVector rq = quantum::centroid_at_time(p, t);
    const PhaseVector rl = liouville::centroid_at_time(p, t);
    r.from_centroids = 0.5 * std::abs(rq.norm_sq() - rl.norm_sq());

    r.from_variances =
        std::abs(quantum::variances_at_time(p, t).mean - liouville::variances_at_time(p, t).mean);

    const auto fq = quantum::centroid_factors_at_time(p, t);
    const auto fl = liouville::centroid_factors_at_time(p, t);
    const double gq = quantum::detail::scale_or_zero(2.0 * (fq.log_gamma + fq.log_lambda));
    const double gl = quantum::detail::scale_or_zero(2.0 * (fl.log_gamma + fl.log_lambda));
    r.reduced = std::abs(gq - gl) * 0.5 * p.r0_norm_sq();
    return r;
}

/// The reduced divergence; the three equivalent routes are required to agree,
/// a disagreement means a broken implementation.
inline double divergence(const ModelParams& p, double tau) {
    const DivergenceRoutes r = divergence_routes(p, tau);
    const double tol = 1e-10 * std::max(1.0, p.r0_norm_sq());
    if (std::abs(r.from_centroids - r.reduced) > tol || std::abs(r.from_variances - r.reduced) > tol)
        throw std::logic_error("divergence: centroid/variance/reduced routes disagree");
    return r.reduced;
}

// ---------------------------------------------------------------------------
// Temperature bound for the quantum-classical transition.

struct TemperatureBound {
    double ratio = 0.0;             ///< k_B T / (hbar omega) = 1 / (beta hbar omega)
    double bound = 0.0;             ///< g_s / (2 Omega), thermodynamic-limit form
    bool satisfied = false;         ///< strict ratio > bound
    double tau_dq = std::numeric_limits<double>::infinity();
    double tau_r = revival_time;
    bool exact_satisfied = false;   ///< finite-N criterion tau_DQ < tau_R
    bool finite = false;            ///< false when the coupling vanishes
};

inline TemperatureBound temperature_bound(const ModelParams& p) {
    validate(p);
    TemperatureBound out;
    out.ratio = 1.0 / p.beta_hbar_omega;
    if (p.capital_omega == 0.0) return out;
    out.finite = true;
    out.bound = p.g_s / (2.0 * p.capital_omega);
    out.satisfied = out.ratio > out.bound;
    const DecoherenceTimes dt = decoherence_times(p);
    out.tau_dq = dt.tau_dq;
    out.exact_satisfied = dt.finite && dt.tau_dq < revival_time;
    return out;
}

// ---------------------------------------------------------------------------
// Aggregate report.

struct TimescaleReport {
    double tau_dq = std::numeric_limits<double>::infinity();
    double tau_dl = std::numeric_limits<double>::infinity();
    double tau_r = revival_time;
    double tau_det_exact = std::numeric_limits<double>::quiet_NaN();
    double tau_det_expansion = 0.0;
    double tau_det_closed = 0.0;
    double temperature_ratio = 0.0;
    bool bound_satisfied = false;
    double resolution_m = 2.0;
};

inline TimescaleReport report(const ModelParams& p, double resolution_m = 2.0) {
    TimescaleReport r;
    const DecoherenceTimes dt = decoherence_times(p);
    r.tau_dq = dt.tau_dq;
    r.tau_dl = dt.tau_dl;
    const DeterminismBreak db = determinism_break_time(p, resolution_m);
    r.tau_det_exact = db.tau_det_exact;
    r.tau_det_expansion = db.tau_det_expansion;
    r.tau_det_closed = db.tau_det_closed;
    const TemperatureBound tb = temperature_bound(p);
    r.temperature_ratio = tb.ratio;
    r.bound_satisfied = tb.satisfied;
    r.resolution_m = resolution_m;
    return r;
}

}  // namespace kerrdeco::timescales

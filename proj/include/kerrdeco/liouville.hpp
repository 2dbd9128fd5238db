// Exact classical-statistical (Liouvillian) observables of the oscillator:
// centroid, quadratic moments, and variances of the phase-space density that
// starts as the Wigner function of the initial quantum state.

#pragma once

#include <array>
#include <cmath>
#include <span>

#include "attenuation.hpp"
#include "model.hpp"
#include "phase_space.hpp"
#include "quantum.hpp"

namespace kerrdeco::liouville {

/// Nonlinearity-induced twist of the initial condition for the centroid,
/// (1/eta1) [[1 - tau^2, 2 tau], [-2 tau, 1 - tau^2]], eta1 = 1 + tau^2.
/// Orthogonal for every tau.
inline Mat2 twist_matrix(double tau) {
    const double eta1 = 1.0 + tau * tau;
    const double d = (1.0 - tau * tau) / eta1;
    const double o = 2.0 * tau / eta1;
    return {d, o, -o, d};
}

/// Quadratic-moment counterpart,
/// (1/eta2^2) [[1 - 12 tau^2, 2 tau (3 - 4 tau^2)], [-..., 1 - 12 tau^2]],
/// eta2 = 1 + 4 tau^2. Kept exactly as printed: its norm is eta2^{-1/2}, the
/// remaining eta2^{-1} lives in the Lambda_2L factor.
inline Mat2 twist_matrix_2(double tau) {
    const double eta2 = 1.0 + 4.0 * tau * tau;
    const double inv = 1.0 / (eta2 * eta2);
    const double d = (1.0 - 12.0 * tau * tau) * inv;
    const double o = 2.0 * tau * (3.0 - 4.0 * tau * tau) * inv;
    return {d, o, -o, d};
}

struct CentroidFactors {
    double gamma = 1.0;      ///< |D_1|
    double log_gamma = 0.0;
    double eta1 = 1.0;
    double lambda = 1.0;     ///< eta1^{-1} exp[-(R0^T R0/hbar) tau^2/eta1]
    double log_lambda = 0.0;
    bool lambda_underflow = false;
    double theta = 0.0;      ///< arg D_1, continuous
    double phi = 0.0;        ///< omega_s t + (tau/eta1)(R0^T R0/hbar)
};

inline CentroidFactors centroid_factors_at_time(const ModelParams& p, double t) {
    const AttenuationFactor d1 = attenuation_at_time(p, 1, t);
    const double tau = p.hbar * p.g_s * t;
    const double r2h = p.r2_over_hbar();

    CentroidFactors f;
    f.eta1 = 1.0 + tau * tau;
    f.log_gamma = d1.log_modulus;
    f.gamma = d1.modulus;
    f.log_lambda = -std::log(f.eta1) - r2h * tau * tau / f.eta1;
    f.lambda_underflow = f.log_lambda < quantum::underflow_log_threshold;
    f.lambda = f.lambda_underflow ? 0.0 : std::exp(f.log_lambda);
    f.theta = d1.phase_angle;
    f.phi = p.omega_s * t + tau / f.eta1 * r2h;
    return f;
}

struct QuadraticFactors {
    double gamma = 1.0;      ///< |D_2|
    double log_gamma = 0.0;
    double eta2 = 1.0;
    double lambda = 1.0;     ///< eta2^{-1} exp[-4 (R0^T R0/hbar) tau^2/eta2]
    double log_lambda = 0.0;
    bool lambda_underflow = false;
    double theta = 0.0;
    double phi = 0.0;        ///< 2 omega_s t + 2 (R0^T R0/hbar) tau/eta2
};

inline QuadraticFactors quadratic_factors_at_time(const ModelParams& p, double t) {
    const AttenuationFactor d2 = attenuation_at_time(p, 2, t);
    const double tau = p.hbar * p.g_s * t;
    const double r2h = p.r2_over_hbar();

    QuadraticFactors f;
    f.eta2 = 1.0 + 4.0 * tau * tau;
    f.log_gamma = d2.log_modulus;
    f.gamma = d2.modulus;
    f.log_lambda = -std::log(f.eta2) - 4.0 * r2h * tau * tau / f.eta2;
    f.lambda_underflow = f.log_lambda < quantum::underflow_log_threshold;
    f.lambda = f.lambda_underflow ? 0.0 : std::exp(f.log_lambda);
    f.theta = d2.phase_angle;
    f.phi = 2.0 * p.omega_s * t + 2.0 * r2h * tau / f.eta2;
    return f;
}

inline PhaseVector centroid_at_time(const ModelParams& p, double t) {
    const CentroidFactors f = centroid_factors_at_time(p, t);
    const double tau = p.hbar * p.g_s * t;
    const double scale = quantum::detail::scale_or_zero(f.log_gamma + f.log_lambda);
    return scale * (rotation_m1(f.theta) * (rotation_m1(f.phi) * (twist_matrix(tau) * p.r0)));
}

inline PhaseVector centroid(const ModelParams& p, double tau) {
    return centroid_at_time(p, from_tau(p, tau));
}

inline std::array<double, 2> quadratic_at_time(const ModelParams& p, double t) {
    const QuadraticFactors f = quadratic_factors_at_time(p, t);
    const double tau = p.hbar * p.g_s * t;
    const double iso = 0.5 * (p.r0_norm_sq() + p.hbar);
    const double scale = quantum::detail::scale_or_zero(f.log_gamma + f.log_lambda);
    const Mat2 chain = reflection_m2(f.theta + f.phi) * twist_matrix_2(tau);
    const double aniso = 0.5 * scale * quad_form(chain, p.r0);
    return {iso + aniso, iso - aniso};
}

inline std::array<double, 2> quadratic(const ModelParams& p, double tau) {
    return quadratic_at_time(p, from_tau(p, tau));
}

inline quantum::Variances variances_at_time(const ModelParams& p, double t) {
    const CentroidFactors f1 = centroid_factors_at_time(p, t);
    const QuadraticFactors f2 = quadratic_factors_at_time(p, t);
    const double tau = p.hbar * p.g_s * t;
    const double g2l2 = quantum::detail::scale_or_zero(2.0 * (f1.log_gamma + f1.log_lambda));
    const double scale2 = quantum::detail::scale_or_zero(f2.log_gamma + f2.log_lambda);
    const double psi1 = f1.phi + f1.theta;
    const double psi2 = f2.phi + f2.theta;

    const Mat2 twist = twist_matrix(tau);
    const Mat2 chain2 = reflection_m2(psi2) * twist_matrix_2(tau);
    const Mat2 chain1 = reflection_m2(2.0 * psi1) * (twist * twist);

    const double iso = 0.5 * p.hbar + 0.5 * p.r0_norm_sq() * (1.0 - g2l2);
    const double aniso = 0.5 * (scale2 * quad_form(chain2, p.r0) - g2l2 * quad_form(chain1, p.r0));
    return {iso + aniso, iso - aniso, iso};
}

inline quantum::Variances variances(const ModelParams& p, double tau) {
    return variances_at_time(p, from_tau(p, tau));
}

inline Moments moments_at_time(const ModelParams& p, double t) {
    Moments m;
    m.centroid = centroid_at_time(p, t);
    m.quadratic = quadratic_at_time(p, t);
    const quantum::Variances v = variances_at_time(p, t);
    m.variances = {v.var_q, v.var_p};
    m.mean_variance = v.mean;
    return m;
}

inline Moments moments(const ModelParams& p, double tau) {
    return moments_at_time(p, from_tau(p, tau));
}

inline MomentSeries moment_series(const ModelParams& p, std::span<const double> taus) {
    MomentSeries s;
    s.tau.assign(taus.begin(), taus.end());
    s.values.reserve(taus.size());
    for (const double tau : taus) s.values.push_back(moments(p, tau));
    return s;
}

}  // namespace kerrdeco::liouville

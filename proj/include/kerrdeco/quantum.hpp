// Exact quantum observables of the reduced Kerr oscillator: centroid,
// quadratic moments, variances, and the reduced density matrix in Fock basis.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "attenuation.hpp"
#include "model.hpp"
#include "newton.hpp"
#include "phase_space.hpp"

namespace kerrdeco {

/// Centroid, quadratic moments and variances of one theory at one instant.
struct Moments {
    PhaseVector centroid;
    std::array<double, 2> quadratic{0.0, 0.0};  ///< <q^2>, <p^2>
    std::array<double, 2> variances{0.0, 0.0};  ///< var q, var p
    double mean_variance = 0.0;
};

using QuantumMoments = Moments;
using LiouvilleMoments = Moments;

/// Moments of one theory along an evaluation grid.
struct MomentSeries {
    std::vector<double> tau;
    std::vector<Moments> values;
};

namespace quantum {

/// Below this log value an attenuation product is reported as exactly zero.
inline constexpr double underflow_log_threshold = -700.0;

struct CentroidFactors {
    double gamma = 1.0;      ///< |C_{-1}|
    double log_gamma = 0.0;
    double lambda = 1.0;     ///< exp[-(R0^T R0/hbar) sin^2 tau]
    double log_lambda = 0.0;
    bool lambda_underflow = false;
    double theta = 0.0;      ///< arg-continuous reservoir phase + G1 hbar t / 2
    double phi = 0.0;        ///< 2 tau + omega_s t + (R0^T R0 / 2 hbar) sin 2 tau
};

inline CentroidFactors centroid_factors_at_time(const ModelParams& p, double t) {
    const AttenuationFactor c1 = attenuation_at_time(p, -1, t);
    const SpectralDensity sd = build_spectral_density(p);
    const double tau = p.hbar * p.g_s * t;
    const double r2h = p.r2_over_hbar();
    const double s = std::sin(tau);

    CentroidFactors f;
    f.log_gamma = c1.log_modulus;
    f.gamma = c1.modulus;
    f.log_lambda = -r2h * s * s;
    f.lambda_underflow = f.log_lambda < underflow_log_threshold;
    f.lambda = f.lambda_underflow ? 0.0 : std::exp(f.log_lambda);
    f.theta = c1.phase_angle + 0.5 * sd.g1_sum * p.hbar * t;
    f.phi = 2.0 * tau + p.omega_s * t + 0.5 * r2h * std::sin(2.0 * tau);
    return f;
}

struct QuadraticFactors {
    double gamma = 1.0;      ///< |C_{-2}|
    double log_gamma = 0.0;
    double lambda = 1.0;     ///< exp[-(R0^T R0/hbar) sin^2 2 tau]
    double log_lambda = 0.0;
    bool lambda_underflow = false;
    double theta = 0.0;
    double phi = 0.0;        ///< 6 tau + 2 omega_s t + (R0^T R0 / 2 hbar) sin 4 tau
};

inline QuadraticFactors quadratic_factors_at_time(const ModelParams& p, double t) {
    const AttenuationFactor c2 = attenuation_at_time(p, -2, t);
    const SpectralDensity sd = build_spectral_density(p);
    const double tau = p.hbar * p.g_s * t;
    const double r2h = p.r2_over_hbar();
    const double s = std::sin(2.0 * tau);

    QuadraticFactors f;
    f.log_gamma = c2.log_modulus;
    f.gamma = c2.modulus;
    f.log_lambda = -r2h * s * s;
    f.lambda_underflow = f.log_lambda < underflow_log_threshold;
    f.lambda = f.lambda_underflow ? 0.0 : std::exp(f.log_lambda);
    f.theta = c2.phase_angle + sd.g1_sum * p.hbar * t;
    f.phi = 6.0 * tau + 2.0 * p.omega_s * t + 0.5 * r2h * std::sin(4.0 * tau);
    return f;
}

namespace detail {

inline double scale_or_zero(double log_scale) {
    return log_scale < underflow_log_threshold ? 0.0 : std::exp(log_scale);
}

}  // namespace detail

inline PhaseVector centroid_at_time(const ModelParams& p, double t) {
    const CentroidFactors f = centroid_factors_at_time(p, t);
    const double scale = detail::scale_or_zero(f.log_gamma + f.log_lambda);
    return scale * (rotation_m1(f.theta) * (rotation_m1(f.phi) * p.r0));
}

inline PhaseVector centroid(const ModelParams& p, double tau) {
    return centroid_at_time(p, from_tau(p, tau));
}

inline std::array<double, 2> quadratic_at_time(const ModelParams& p, double t) {
    const QuadraticFactors f = quadratic_factors_at_time(p, t);
    const double iso = 0.5 * (p.r0_norm_sq() + p.hbar);
    const double scale = detail::scale_or_zero(f.log_gamma + f.log_lambda);
    const double aniso = 0.5 * scale * quad_form(reflection_m2(f.theta + f.phi), p.r0);
    return {iso + aniso, iso - aniso};
}

inline std::array<double, 2> quadratic(const ModelParams& p, double tau) {
    return quadratic_at_time(p, from_tau(p, tau));
}

struct Variances {
    double var_q = 0.0;
    double var_p = 0.0;
    double mean = 0.0;  ///< (var_q + var_p)/2
};

inline Variances variances_at_time(const ModelParams& p, double t) {
    const CentroidFactors f1 = centroid_factors_at_time(p, t);
    const QuadraticFactors f2 = quadratic_factors_at_time(p, t);
    const double g2l2 = detail::scale_or_zero(2.0 * (f1.log_gamma + f1.log_lambda));
    const double scale2 = detail::scale_or_zero(f2.log_gamma + f2.log_lambda);
    const double psi1 = f1.phi + f1.theta;
    const double psi2 = f2.phi + f2.theta;

    const double iso = 0.5 * p.hbar + 0.5 * p.r0_norm_sq() * (1.0 - g2l2);
    const double aniso = 0.5 * (scale2 * quad_form(reflection_m2(psi2), p.r0) -
                                g2l2 * quad_form(reflection_m2(2.0 * psi1), p.r0));
    return {iso + aniso, iso - aniso, iso};
}

inline Variances variances(const ModelParams& p, double tau) {
    return variances_at_time(p, from_tau(p, tau));
}

inline Moments moments_at_time(const ModelParams& p, double t) {
    Moments m;
    m.centroid = centroid_at_time(p, t);
    m.quadratic = quadratic_at_time(p, t);
    const Variances v = variances_at_time(p, t);
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

// ---------------------------------------------------------------------------
// Reduced density matrix in Fock basis.

struct ReducedDensityMatrix {
    int dim = 0;
    double tau = 0.0;
    std::vector<std::complex<double>> entries;  ///< row-major dim x dim

    std::complex<double>& at(int n, int np) { return entries[static_cast<std::size_t>(n) * dim + np]; }
    std::complex<double> at(int n, int np) const {
        return entries[static_cast<std::size_t>(n) * dim + np];
    }

    double trace_real() const {
        double tr = 0.0;
        for (int n = 0; n < dim; ++n) tr += at(n, n).real();
        return tr;
    }

    double purity() const {
        double s = 0.0;
        for (const auto& e : entries) s += std::norm(e);
        return s;
    }
};

/// Poisson tail sum_{n > n_max} e^{-mean} mean^n / n!.
inline double poisson_tail(double mean, int n_max) {
    if (mean == 0.0) return 0.0;
    double log_term = -mean + (n_max + 1) * std::log(mean) - std::lgamma(n_max + 2.0);
    double term = std::exp(log_term);
    double tail = 0.0;
    for (int n = n_max + 1; n < n_max + 200000; ++n) {
        tail += term;
        term *= mean / (n + 1);
        if (term < 1e-300) break;
    }
    return tail;
}

/// Cutoff rule n_max = ceil(|alpha0|^2 + 10 sqrt(|alpha0|^2) + 10); the
/// Poisson tail beyond it is far below every tolerance used here.
inline int default_fock_cutoff(const ModelParams& p) {
    const double mu = 0.5 * p.r2_over_hbar();
    return static_cast<int>(std::ceil(mu + 10.0 * std::sqrt(mu) + 10.0));
}

/// Matrix of the reduced state at scaled time tau, truncated at n_max.
/// Coherent-state convention: alpha0 = (q0 + i p0)/sqrt(2 hbar).
inline ReducedDensityMatrix reduced_density_matrix_at_time(const ModelParams& p, double t,
                                                           int n_max = -1) {
    validate(p);
    if (n_max < 0) n_max = default_fock_cutoff(p);
    const double mu = 0.5 * p.r2_over_hbar();  // |alpha0|^2
    if (poisson_tail(mu, n_max) >= 1e-12)
        throw std::invalid_argument("reduced_density_matrix: n_max too small for the Poisson tail bound");

    const SpectralDensity sd = build_spectral_density(p);
    const double tau = p.hbar * p.g_s * t;
    const double alpha_arg = std::atan2(p.r0.p, p.r0.q);
    // phase coefficient of (n - n'): tau + omega_s t + G1 hbar t / 2
    const double drift = tau + p.omega_s * t + 0.5 * sd.g1_sum * p.hbar * t;

    const int dim = n_max + 1;
    std::vector<double> log_amp(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) {
        log_amp[static_cast<std::size_t>(n)] =
            mu > 0.0 ? -0.5 * mu + 0.5 * n * std::log(mu) - 0.5 * std::lgamma(n + 1.0)
                     : (n == 0 ? 0.0 : -std::numeric_limits<double>::infinity());
    }

    std::vector<AttenuationFactor> c_of_m(static_cast<std::size_t>(dim));
    for (int m = 0; m < dim; ++m) c_of_m[static_cast<std::size_t>(m)] = attenuation_at_time(p, m, t);

    ReducedDensityMatrix rho;
    rho.dim = dim;
    rho.tau = tau;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    for (int n = 0; n < dim; ++n) {
        for (int np = 0; np <= n; ++np) {
            const int m = n - np;
            const double la = log_amp[static_cast<std::size_t>(n)] + log_amp[static_cast<std::size_t>(np)];
            if (la < underflow_log_threshold) continue;
            const double kerr_phase = -static_cast<double>(n) * n * tau +
                                      static_cast<double>(np) * np * tau;  // -(n^2 - n'^2) tau
            const double phase = m * alpha_arg + kerr_phase - m * drift;
            const std::complex<double> c =
                m == 0 ? std::complex<double>{1.0, 0.0} : c_of_m[static_cast<std::size_t>(m)].value;
            const std::complex<double> value = std::exp(la) * std::polar(1.0, phase) * c;
            rho.at(n, np) = value;
            if (m != 0) rho.at(np, n) = std::conj(value);
        }
    }
    return rho;
}

inline ReducedDensityMatrix reduced_density_matrix(const ModelParams& p, double tau, int n_max = -1) {
    return reduced_density_matrix_at_time(p, from_tau(p, tau), n_max);
}

/// Moments recomputed from a Fock matrix through the ladder sums
/// <a> = sum sqrt(n+1) rho_{n+1,n}, <a^2> = sum sqrt((n+1)(n+2)) rho_{n+2,n}.
inline Moments moments_from_matrix(const ModelParams& p, const ReducedDensityMatrix& rho) {
    std::complex<double> a{0.0, 0.0}, a2{0.0, 0.0};
    double n_mean = 0.0;
    for (int n = 0; n + 1 < rho.dim; ++n) a += std::sqrt(n + 1.0) * rho.at(n + 1, n);
    for (int n = 0; n + 2 < rho.dim; ++n) a2 += std::sqrt((n + 1.0) * (n + 2.0)) * rho.at(n + 2, n);
    for (int n = 0; n < rho.dim; ++n) n_mean += n * rho.at(n, n).real();

    const double root = std::sqrt(2.0 * p.hbar);
    Moments m;
    m.centroid = {root * a.real(), root * a.imag()};
    const double base = p.hbar * (n_mean + 0.5);
    m.quadratic = {base + p.hbar * a2.real(), base - p.hbar * a2.real()};
    m.variances = {m.quadratic[0] - m.centroid.q * m.centroid.q,
                   m.quadratic[1] - m.centroid.p * m.centroid.p};
    m.mean_variance = 0.5 * (m.variances[0] + m.variances[1]);
    return m;
}

// ---------------------------------------------------------------------------
// hbar -> 0 behavior at fixed physical time.

struct HbarLimitPoint {
    double hbar = 0.0;
    double gap = 0.0;          ///< |R_Q - R_N| for the closed variant
    double gap_over_r0 = 0.0;
    double abs_c1 = 1.0;       ///< |C_{-1}(t)| (1 when the coupling vanishes)
};

struct HbarLimitReport {
    std::vector<HbarLimitPoint> points;
    bool open_coupling = false;
    bool gap_monotone_decreasing = true;
    double final_gap_over_r0 = 0.0;
    double c1_final = 1.0;
    double c1_final_delta = 0.0;  ///< |C| change over the last step of the sequence
};

/// Scans a decreasing hbar sequence at fixed physical time. The physical
/// temperature and bath frequency are held fixed, so beta_hbar_omega scales
/// proportionally to hbar.
inline HbarLimitReport hbar_limit_check(const ModelParams& base, std::span<const double> hbars,
                                        double t) {
    validate(base);
    if (hbars.empty()) throw std::invalid_argument("hbar_limit_check: empty hbar sequence");
    HbarLimitReport report;
    report.open_coupling = base.capital_omega > 0.0;
    for (const double h : hbars) {
        if (!(h > 0.0)) throw std::invalid_argument("hbar_limit_check: hbar values must be > 0");
        ModelParams q = base;
        q.hbar = h;
        q.beta_hbar_omega = base.beta_hbar_omega * (h / base.hbar);

        HbarLimitPoint pt;
        pt.hbar = h;
        const PhaseVector rq = centroid_at_time(q, t);
        const PhaseVector rn = newton::trajectory_at_time(q, newton::zero_bath(q), t);
        pt.gap = norm(rq - rn);
        pt.gap_over_r0 = pt.gap / norm(base.r0);
        pt.abs_c1 = attenuation_at_time(q, -1, t).modulus;
        report.points.push_back(pt);
    }
    for (std::size_t i = 1; i < report.points.size(); ++i)
        report.gap_monotone_decreasing =
            report.gap_monotone_decreasing && report.points[i].gap <= report.points[i - 1].gap;
    report.final_gap_over_r0 = report.points.back().gap_over_r0;
    report.c1_final = report.points.back().abs_c1;
    report.c1_final_delta =
        report.points.size() > 1
            ? std::abs(report.points.back().abs_c1 - report.points[report.points.size() - 2].abs_c1)
            : 0.0;
    return report;
}

}  // namespace quantum

}  // namespace kerrdeco

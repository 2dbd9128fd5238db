// Closed-form Newtonian trajectory of the system oscillator and the RK4
// integration oracle for the full (system + reservoir) Hamilton equations.
//
// The Hamiltonian depends on the coordinates only through the actions
// I = (p^2 + q^2)/2, so every pair rotates rigidly; the system's rotation
// rate is d(theta_s)/dt = omega_s + 2 g_s I_s + sum_k g_k I_k. An alternate
// convention that weights the bath actions twice sits behind a compile-time
// switch; the RK4 oracle adjudicates between the two in the tests.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "phase_space.hpp"

namespace kerrdeco::newton {

/// Conserved reservoir actions I_k = (p_k^2 + q_k^2)/2 entering the system's
/// rotation rate.
struct BathInitialState {
    std::vector<double> actions;
};

inline BathInitialState zero_bath(const ModelParams& p) {
    return {std::vector<double>(static_cast<std::size_t>(p.n_modes), 0.0)};
}

inline BathInitialState bath_from_phase_points(std::span<const PhaseVector> points) {
    BathInitialState bath;
    bath.actions.reserve(points.size());
    for (const PhaseVector& v : points) bath.actions.push_back(0.5 * v.norm_sq());
    return bath;
}

enum class BathPhaseConvention {
    hamilton,      ///< sum_k g_k I_k (derived from Hamilton's equations; default)
    doubled_bath,  ///< sum_k g_k (p_k^2 + q_k^2) = 2 sum_k g_k I_k
};

/// Angular velocity of the system phase point for given actions.
template <BathPhaseConvention Conv = BathPhaseConvention::hamilton>
double rotation_rate(const ModelParams& p, const SpectralDensity& sd, double system_action,
                     std::span<const double> bath_actions) {
    double rate = p.omega_s + 2.0 * p.g_s * system_action;
    const double bath_weight = (Conv == BathPhaseConvention::hamilton) ? 1.0 : 2.0;
    for (std::size_t k = 0; k < sd.g_k.size(); ++k) rate += bath_weight * sd.g_k[k] * bath_actions[k];
    return rate;
}

/// Rigid rotation of one phase point by rate * t.
inline PhaseVector evolve_sample(PhaseVector r, double rate, double t) {
    return rotation_m1(rate * t) * r;
}

template <BathPhaseConvention Conv = BathPhaseConvention::hamilton>
PhaseVector trajectory_at_time(const ModelParams& p, const BathInitialState& bath, double t) {
    validate(p);
    if (bath.actions.size() != static_cast<std::size_t>(p.n_modes))
        throw std::invalid_argument("bath action count must equal n_modes");
    const SpectralDensity sd = build_spectral_density(p);
    const double rate = rotation_rate<Conv>(p, sd, 0.5 * p.r0.norm_sq(), bath.actions);
    return evolve_sample(p.r0, rate, t);
}

template <BathPhaseConvention Conv = BathPhaseConvention::hamilton>
PhaseVector trajectory(const ModelParams& p, const BathInitialState& bath, double tau) {
    return trajectory_at_time<Conv>(p, bath, from_tau(p, tau));
}

// ---------------------------------------------------------------------------
// RK4 oracle on the full 2(N+1)-dimensional Hamilton equations.

struct Rk4Options {
    double step = 1e-4;
    double energy_tolerance = 1e-8;  ///< max relative drift of H before rejection
};

inline double total_energy(const ModelParams& p, const SpectralDensity& sd, PhaseVector sys,
                           std::span<const PhaseVector> bath) {
    const double i_s = 0.5 * sys.norm_sq();
    double e = p.omega_s * i_s + p.g_s * i_s * i_s;
    for (std::size_t k = 0; k < bath.size(); ++k) {
        const double i_k = 0.5 * bath[k].norm_sq();
        e += p.omega_bath * i_k + (k < sd.g_k.size() ? sd.g_k[k] : 0.0) * i_s * i_k;
    }
    return e;
}

namespace detail {

// State layout: [q_s, p_s, q_1, p_1, ..., q_N, p_N].
inline void hamilton_rhs(const ModelParams& p, const SpectralDensity& sd,
                         std::span<const double> y, std::span<double> dy) {
    const std::size_t n = sd.g_k.size();
    const double i_s = 0.5 * (y[0] * y[0] + y[1] * y[1]);
    double system_rate = p.omega_s + 2.0 * p.g_s * i_s;
    for (std::size_t k = 0; k < n; ++k) {
        const double qk = y[2 + 2 * k], pk = y[3 + 2 * k];
        system_rate += sd.g_k[k] * 0.5 * (qk * qk + pk * pk);
    }
    dy[0] = system_rate * y[1];
    dy[1] = -system_rate * y[0];
    for (std::size_t k = 0; k < n; ++k) {
        const double mode_rate = p.omega_bath + sd.g_k[k] * i_s;
        dy[2 + 2 * k] = mode_rate * y[3 + 2 * k];
        dy[3 + 2 * k] = -mode_rate * y[2 + 2 * k];
    }
}

}  // namespace detail

struct Rk4State {
    PhaseVector system;
    std::vector<PhaseVector> bath;
};

/// Fixed-step RK4 integration of the full chain from the model's R0 and the
/// given bath phase points. Throws if the relative energy drift exceeds the
/// configured tolerance.
inline Rk4State rk4_full_state(const ModelParams& p, std::span<const PhaseVector> bath0, double t,
                               const Rk4Options& opt = {}) {
    validate(p);
    if (bath0.size() != static_cast<std::size_t>(p.n_modes))
        throw std::invalid_argument("bath phase point count must equal n_modes");
    if (!(opt.step > 0.0)) throw std::invalid_argument("rk4 step must be > 0");

    const SpectralDensity sd = build_spectral_density(p);
    const std::size_t dim = 2 * (bath0.size() + 1);
    std::vector<double> y(dim), k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
    y[0] = p.r0.q;
    y[1] = p.r0.p;
    for (std::size_t k = 0; k < bath0.size(); ++k) {
        y[2 + 2 * k] = bath0[k].q;
        y[3 + 2 * k] = bath0[k].p;
    }

    const double e0 = total_energy(p, sd, p.r0, bath0);

    double time = 0.0;
    while (time < t) {
        const double h = std::min(opt.step, t - time);
        detail::hamilton_rhs(p, sd, y, k1);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        detail::hamilton_rhs(p, sd, tmp, k2);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        detail::hamilton_rhs(p, sd, tmp, k3);
        for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
        detail::hamilton_rhs(p, sd, tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        time += h;
    }

    Rk4State out;
    out.system = {y[0], y[1]};
    out.bath.resize(bath0.size());
    for (std::size_t k = 0; k < bath0.size(); ++k) out.bath[k] = {y[2 + 2 * k], y[3 + 2 * k]};

    const double e1 = total_energy(p, sd, out.system, out.bath);
    const double scale = std::max(std::abs(e0), 1.0);
    if (!(std::abs(e1 - e0) <= opt.energy_tolerance * scale))  // NaN-safe rejection
        throw std::runtime_error("rk4: energy drift exceeds tolerance; reduce the step size");
    return out;
}

inline PhaseVector rk4_trajectory(const ModelParams& p, std::span<const PhaseVector> bath0, double t,
                                  const Rk4Options& opt = {}) {
    return rk4_full_state(p, bath0, t, opt).system;
}

}  // namespace kerrdeco::newton

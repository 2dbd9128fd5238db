// Complex attenuation factors multiplying the oscillatory moment terms:
// the thermal product C_m for the quantum theory and D_m for the Liouvillian
// one. Their moduli below unity are what encodes decoherence.

#pragma once

#include <cmath>
#include <complex>

#include "model.hpp"

namespace kerrdeco {

/// One attenuation factor at a fixed instant.
///
/// phase_angle is accumulated per reservoir mode, which keeps it continuous
/// in time (each mode's argument stays inside a single branch), so rotation
/// matrices built from it never jump across branch cuts.
struct AttenuationFactor {
    std::complex<double> value{1.0, 0.0};
    double modulus = 1.0;
    double phase_angle = 0.0;
    double log_modulus = 0.0;
};

namespace quantum {

/// C_m(t) = prod_k (1 - e^{-b}) / (1 - e^{-b} e^{-i g_k hbar m t}), b = beta hbar omega.
/// The modulus is evaluated through the equivalent product
/// prod_k [1 + sin^2(g_k hbar m t / 2)/sinh^2(b/2)]^{-1/2} in log space.
inline AttenuationFactor attenuation_at_time(const ModelParams& p, int m, double t) {
    validate(p);
    AttenuationFactor out;
    if (m == 0 || p.n_modes == 0 || p.capital_omega == 0.0) return out;

    const SpectralDensity sd = build_spectral_density(p);
    const double boltzmann = std::exp(-p.beta_hbar_omega);
    const double sinh_half = std::sinh(0.5 * p.beta_hbar_omega);
    const double sinh_sq = sinh_half * sinh_half;

    std::complex<double> value{1.0, 0.0};
    double log_modulus = 0.0;
    double phase = 0.0;
    for (const double g : sd.g_k) {
        const double phi = g * p.hbar * m * t;
        const std::complex<double> denom{1.0 - boltzmann * std::cos(phi), boltzmann * std::sin(phi)};
        value *= (1.0 - boltzmann) / denom;
        const double s = std::sin(0.5 * phi);
        log_modulus -= 0.5 * std::log1p(s * s / sinh_sq);
        phase -= std::atan2(denom.imag(), denom.real());
    }
    out.value = value;
    out.log_modulus = log_modulus;
    out.modulus = std::exp(log_modulus);
    out.phase_angle = phase;
    return out;
}

inline AttenuationFactor attenuation(const ModelParams& p, int m, double tau) {
    return attenuation_at_time(p, m, from_tau(p, tau));
}

}  // namespace quantum

namespace liouville {

/// D_m(t) = prod_k [1 - i m g_k hbar t z / 2]^{-1} with z = 1/tanh(b/2).
inline AttenuationFactor attenuation_at_time(const ModelParams& p, int m, double t) {
    validate(p);
    AttenuationFactor out;
    if (m == 0 || p.n_modes == 0 || p.capital_omega == 0.0) return out;

    const SpectralDensity sd = build_spectral_density(p);
    const double z = thermal_z(p);

    std::complex<double> value{1.0, 0.0};
    double log_modulus = 0.0;
    double phase = 0.0;
    for (const double g : sd.g_k) {
        const double x = 0.5 * g * p.hbar * t * z * m;
        value /= std::complex<double>{1.0, -x};
        log_modulus -= 0.5 * std::log1p(x * x);
        phase += std::atan(x);
    }
    out.value = value;
    out.log_modulus = log_modulus;
    out.modulus = std::exp(log_modulus);
    out.phase_angle = phase;
    return out;
}

inline AttenuationFactor attenuation(const ModelParams& p, int m, double tau) {
    return attenuation_at_time(p, m, from_tau(p, tau));
}

}  // namespace liouville

}  // namespace kerrdeco

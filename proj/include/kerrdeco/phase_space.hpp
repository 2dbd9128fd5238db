// Minimal 2D phase-space vectors and the rotation/reflection matrices used
// throughout the closed-form dynamics.

#pragma once

#include <cmath>

namespace kerrdeco {

/// Phase-space point (q, p) of a single oscillator, in units of sqrt(action).
struct PhaseVector {
    double q = 0.0;
    double p = 0.0;

    double norm_sq() const { return q * q + p * p; }
};

inline PhaseVector operator+(PhaseVector a, PhaseVector b) { return {a.q + b.q, a.p + b.p}; }
inline PhaseVector operator-(PhaseVector a, PhaseVector b) { return {a.q - b.q, a.p - b.p}; }
inline PhaseVector operator*(double s, PhaseVector v) { return {s * v.q, s * v.p}; }
inline double norm(PhaseVector v) { return std::hypot(v.q, v.p); }

/// Dense 2x2 real matrix, row major.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;

    PhaseVector operator*(PhaseVector v) const {
        return {a11 * v.q + a12 * v.p, a21 * v.q + a22 * v.p};
    }

    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    Mat2 transpose() const { return {a11, a21, a12, a22}; }

    double det() const { return a11 * a22 - a12 * a21; }
};

/// Clockwise rotation [[cos, sin], [-sin, cos]].
inline Mat2 rotation_m1(double chi) {
    const double c = std::cos(chi), s = std::sin(chi);
    return {c, s, -s, c};
}

/// Symmetric reflection-type matrix [[cos, sin], [sin, -cos]].
inline Mat2 reflection_m2(double chi) {
    const double c = std::cos(chi), s = std::sin(chi);
    return {c, s, s, -c};
}

/// Quadratic form v^T M v.
inline double quad_form(const Mat2& m, PhaseVector v) {
    return v.q * (m.a11 * v.q + m.a12 * v.p) + v.p * (m.a21 * v.q + m.a22 * v.p);
}

}  // namespace kerrdeco

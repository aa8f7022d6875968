/// Closed-form model of the two-JPC interferometric isolator: inner 4-port
/// matrix, hybrid combination, explicit matrix elements, special cases,
/// added noise, and parameter sweeps.
#pragma once

#include "paramnet/devices.hpp"
#include "paramnet/wave.hpp"

#include <cmath>
#include <vector>

namespace paramnet::mpijis {

/// Five-parameter description of the isolator.
struct MpijisParams {
    double t = 1.0 / std::numbers::sqrt2;      // JPC transmission, [0,1]
    double alpha = 1.0 / std::numbers::sqrt2;  // coupler coefficient, [0,1]
    double phi1 = 0.0;                         // pump phase of stage 1, radians
    double phi2 = pi / 2.0;                    // pump phase of stage 2, radians

    void validate() const {
        if (t < 0.0 || t > 1.0)
            throw std::invalid_argument("MpijisParams: t must be in [0,1]");
        if (alpha < 0.0 || alpha > 1.0)
            throw std::invalid_argument("MpijisParams: alpha must be in [0,1]");
    }

    double beta() const { return std::sqrt(1.0 - alpha * alpha); }
    /// Pump phase difference, normalized to (-pi, pi].
    double phi() const {
        double p = std::remainder(phi1 - phi2, 2.0 * pi);
        if (p <= -pi) p += 2.0 * pi;
        return p;
    }
    double phi_sum() const { return phi1 + phi2; }

    /// Builds from (phi, phi_sum) instead of the individual pump phases.
    static MpijisParams from_phase_diff(double t, double alpha, double phi,
                                        double phi_sum = pi / 2.0) {
        MpijisParams p;
        p.t = t;
        p.alpha = alpha;
        p.phi1 = 0.5 * (phi_sum + phi);
        p.phi2 = 0.5 * (phi_sum - phi);
        p.validate();
        return p;
    }
};

struct NoiseReport {
    double s21_power = 1.0;    // forward power transmission
    double noise_factor = 1.0; // output SNR / input SNR
    double n_add = 0.0;        // noise-equivalent input photons
};

/// Two-port response on resonance for the symmetric-coupler device:
/// S21, S12 = i(sqrt(1-t^2) -/+ sqrt(2) t^2 sin(phi)) / (1+t^2),
/// S11 = S22 = -i sqrt(2) t^2 cos(phi) / (1+t^2).
struct TwoPortResponse {
    Complex s21, s12, s11;
};

inline TwoPortResponse two_port_on_resonance(double t, double phi) {
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("two_port_on_resonance: t must be in [0,1]");
    const double t2 = t * t;
    const double r = std::sqrt(1.0 - t2);
    const double den = 1.0 + t2;
    const Complex i{0.0, 1.0};
    TwoPortResponse out;
    out.s21 = i * (r - std::numbers::sqrt2 * t2 * std::sin(phi)) / den;
    out.s12 = i * (r + std::numbers::sqrt2 * t2 * std::sin(phi)) / den;
    out.s11 = -i * std::numbers::sqrt2 * t2 * std::cos(phi) / den;
    return out;
}

namespace detail {

inline std::vector<PortLabel> inner_ports() {
    return {{"inner", "1p", Channel::f1},
            {"inner", "2p", Channel::f1},
            {"inner", "3", Channel::f2},
            {"inner", "4", Channel::f2}};
}

inline std::vector<PortLabel> outer_ports() {
    return {{"mpijis", "1", Channel::f1},
            {"mpijis", "2", Channel::f1},
            {"mpijis", "3", Channel::f2},
            {"mpijis", "4", Channel::f2}};
}

/// Inner matrix over {1p, 2p, 3, 4} for possibly complex conversion
/// amplitudes (the off-resonance generalization substitutes a complex t
/// with r on the principal branch of sqrt(1 - t^2)).
template <typename Scalar>
Matrix inner_matrix(Scalar r, Scalar t, double phi1, double phi2, double alpha) {
    const double beta = std::sqrt(1.0 - alpha * alpha);
    const Complex loop = 1.0 - alpha * alpha * Complex(r) * Complex(r);
    if (std::abs(loop) == 0.0)
        throw std::runtime_error(
            "inner_matrix: singular self-loop between the internal b ports (alpha*r = 1)");
    const Complex d = 1.0 / loop;
    const Complex e1 = std::polar(1.0, phi1);
    const Complex e2 = std::polar(1.0, phi2);
    const Complex ephi = e1 / e2;  // exp(i(phi1 - phi2))
    const Complex R = r, T = t;
    const double a = alpha, b = beta;

    Matrix m(4, 4);
    m(0, 0) = R * b * b * d;
    m(0, 1) = -a * T * T / ephi * d;
    m(0, 2) = -b * T / e1 * d;
    m(0, 3) = -b * R * a * T / e1 * d;
    m(1, 0) = -a * T * T * ephi * d;
    m(1, 1) = R * b * b * d;
    m(1, 2) = -b * R * a * T / e2 * d;
    m(1, 3) = -b * T / e2 * d;
    m(2, 0) = -b * T * e1 * d;
    m(2, 1) = -b * R * a * T * e2 * d;
    m(2, 2) = -b * b * R * d;
    m(2, 3) = a * T * T * d;
    m(3, 0) = -b * R * a * T * e1 * d;
    m(3, 1) = -b * T * e2 * d;
    m(3, 2) = a * T * T * d;
    m(3, 3) = -b * b * R * d;
    return m;
}

/// Applies the hybrid-combination relations to an inner 4x4 matrix.
inline Matrix combine_with_hybrid(const Matrix& s) {
    const Complex i{0.0, 1.0};
    const double rt2 = std::numbers::sqrt2;
    Matrix S(4, 4);
    S(0, 0) = 0.5 * (s(0, 0) - s(1, 1) + i * s(1, 0) + i * s(0, 1));
    S(0, 1) = 0.5 * (i * s(0, 0) + i * s(1, 1) + s(0, 1) - s(1, 0));
    S(1, 0) = 0.5 * (i * s(0, 0) + i * s(1, 1) + s(1, 0) - s(0, 1));
    S(1, 1) = 0.5 * (s(1, 1) - s(0, 0) + i * s(1, 0) + i * s(0, 1));
    S(0, 2) = (i * s(1, 2) + s(0, 2)) / rt2;
    S(0, 3) = (i * s(1, 3) + s(0, 3)) / rt2;
    S(1, 2) = (s(1, 2) + i * s(0, 2)) / rt2;
    S(1, 3) = (s(1, 3) + i * s(0, 3)) / rt2;
    S(2, 0) = (i * s(2, 1) + s(2, 0)) / rt2;
    S(2, 1) = (s(2, 1) + i * s(2, 0)) / rt2;
    S(3, 0) = (i * s(3, 1) + s(3, 0)) / rt2;
    S(3, 1) = (s(3, 1) + i * s(3, 0)) / rt2;
    S(2, 2) = s(2, 2);
    S(2, 3) = s(2, 3);
    S(3, 2) = s(3, 2);
    S(3, 3) = s(3, 3);
    return S;
}

/// Explicit matrix elements in terms of (t, alpha, phi, phi_sum). Requires
/// beta > 0; the alpha = 1 limit is reached through the hybrid route.
inline Matrix explicit_matrix(Complex t, double alpha, double phi, double phi_sum) {
    const double beta = std::sqrt(1.0 - alpha * alpha);
    if (beta == 0.0)
        throw std::invalid_argument("explicit_matrix: requires alpha < 1");
    const Complex i{0.0, 1.0};
    const Complex t2 = t * t;
    const Complex r = std::sqrt(1.0 - t2);  // principal branch
    const double b2 = beta * beta;
    const Complex den = 1.0 + (alpha * alpha / b2) * t2;
    const Complex sphi = std::sin(Complex(phi));
    const Complex cphi = std::cos(Complex(phi));

    const auto ep = [](double x) { return std::polar(1.0, x); };
    const Complex load_pref =
        -t * ep(-phi_sum / 2.0 + pi / 4.0) / (std::numbers::sqrt2 * beta * den);
    const Complex load_pref_rev =
        -t * ep(phi_sum / 2.0 + pi / 4.0) / (std::numbers::sqrt2 * beta * den);

    Matrix S(4, 4);
    S(1, 0) = i / den * (r - (alpha / b2) * t2 * sphi);  // S21
    S(0, 1) = i / den * (r + (alpha / b2) * t2 * sphi);  // S12
    S(0, 0) = -i * (alpha / b2) * t2 / den * cphi;
    S(1, 1) = S(0, 0);
    S(2, 2) = -r / den;
    S(3, 3) = S(2, 2);
    S(2, 3) = (alpha / b2) * t2 / den;
    S(3, 2) = S(2, 3);
    S(0, 2) = load_pref * (r * alpha * ep(phi / 2.0 + pi / 4.0) + ep(-phi / 2.0 - pi / 4.0));
    S(0, 3) = load_pref * (ep(phi / 2.0 + pi / 4.0) + r * alpha * ep(-phi / 2.0 - pi / 4.0));
    S(1, 2) = load_pref * (r * alpha * ep(phi / 2.0 - pi / 4.0) + ep(-phi / 2.0 + pi / 4.0));
    S(1, 3) = load_pref * (ep(phi / 2.0 - pi / 4.0) + r * alpha * ep(-phi / 2.0 + pi / 4.0));
    S(2, 0) = load_pref_rev * (r * alpha * ep(-phi / 2.0 + pi / 4.0) + ep(phi / 2.0 - pi / 4.0));
    S(2, 1) = load_pref_rev * (r * alpha * ep(-phi / 2.0 - pi / 4.0) + ep(phi / 2.0 + pi / 4.0));
    S(3, 0) = load_pref_rev * (ep(-phi / 2.0 + pi / 4.0) + r * alpha * ep(phi / 2.0 - pi / 4.0));
    S(3, 1) = load_pref_rev * (ep(-phi / 2.0 - pi / 4.0) + r * alpha * ep(phi / 2.0 + pi / 4.0));
    return S;
}

}  // namespace detail

/// Inner 4-port matrix over ports {1p, 2p, 3, 4} (everything except the
/// input hybrid). Requires r^2 + t^2 = 1.
inline ScatterMatrix inner_smatrix(double r, double t, double phi1, double phi2, double alpha) {
    if (std::abs(r * r + t * t - 1.0) > 1e-12)
        throw std::invalid_argument("inner_smatrix: r^2 + t^2 must equal 1");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("inner_smatrix: alpha must be in [0,1]");
    if (alpha * std::abs(r) == 1.0)
        throw std::runtime_error(
            "inner_smatrix: singular self-loop between the internal b ports (alpha*r = 1)");
    return {detail::inner_ports(), detail::inner_matrix(r, t, phi1, phi2, alpha)};
}

/// Full 4x4 scattering matrix over ports {1, 2, 3, 4}, assembled by applying
/// the hybrid-combination relations to the inner matrix.
inline ScatterMatrix full_smatrix(const MpijisParams& p) {
    p.validate();
    const double r = std::sqrt(1.0 - p.t * p.t);
    const Matrix inner = detail::inner_matrix(r, p.t, p.phi1, p.phi2, p.alpha);
    return {detail::outer_ports(), detail::combine_with_hybrid(inner)};
}

/// Same matrix from the explicit closed-form element expressions. Requires
/// alpha < 1; used as the algebraic cross-check of full_smatrix.
inline ScatterMatrix full_smatrix_explicit(const MpijisParams& p) {
    p.validate();
    // The raw difference phi1 - phi2, not the normalized phi(): the explicit
    // forms contain half-angle factors exp(i phi / 2) whose sign depends on
    // the 2 pi branch.
    return {detail::outer_ports(),
            detail::explicit_matrix(p.t, p.alpha, p.phi1 - p.phi2, p.phi_sum())};
}

/// Off-resonance generalization: substitutes the complex conversion
/// amplitude t[omega] of the given JPC bias, with sqrt(1 - t^2) on the
/// principal branch. Reduces to full_smatrix on resonance.
inline ScatterMatrix full_smatrix_at(const MpijisParams& p, const JpcParams& jpc,
                                     double omega) {
    p.validate();
    jpc.validate();
    const Complex t = jpc_t_of_omega(jpc, omega);
    const Complex r = std::sqrt(1.0 - t * t);
    const Matrix inner = detail::inner_matrix(r, t, p.phi1, p.phi2, p.alpha);
    return {detail::outer_ports(), detail::combine_with_hybrid(inner)};
}

/// Added noise referred to the input: n_add = (1 - |S21|^2) / (2 |S21|^2),
/// with vacuum noise N1 = 1/2 entering every port.
inline NoiseReport added_noise(double s21_power) {
    if (s21_power < 0.0 || s21_power > 1.0)
        throw std::invalid_argument("added_noise: |S21|^2 must be in [0,1]");
    NoiseReport rep;
    rep.s21_power = s21_power;
    rep.noise_factor = s21_power;
    if (s21_power == 0.0) {
        rep.n_add = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.n_add = (1.0 - s21_power) / (2.0 * s21_power);
    return rep;
}

/// One row of the pump-phase sweep: power levels of the parameter set
/// plotted in the device's phase-response figure.
struct PhaseSweepRow {
    double phi;
    double s11, s21, s12, s31, s23, s13, s32;  // power (|S|^2)
};

inline std::vector<PhaseSweepRow> phase_sweep(const MpijisParams& base,
                                              const std::vector<double>& phis) {
    std::vector<PhaseSweepRow> rows;
    rows.reserve(phis.size());
    for (double phi : phis) {
        const auto p = MpijisParams::from_phase_diff(base.t, base.alpha, phi, base.phi_sum());
        const Matrix S = full_smatrix(p).data;
        const auto pw = [&](int i, int j) { return std::norm(S(i, j)); };
        rows.push_back({phi, pw(0, 0), pw(1, 0), pw(0, 1), pw(2, 0), pw(1, 2), pw(0, 2),
                        pw(2, 1)});
    }
    return rows;
}

/// Smallest t in [0, t_full] with |S12(t)|^2 equal to the target backward
/// power, at pump phase difference phi (default -pi/2). On this branch
/// |S12|^2 decreases monotonically from 1 at t = 0 to 0 at the full-isolation
/// point t_full, so bracketed bisection is exact.
inline double solve_t_for_isolation(double alpha, double target_iso_power,
                                    double phi = -pi / 2.0) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("solve_t_for_isolation: alpha must be in [0,1)");
    if (target_iso_power < 0.0 || target_iso_power > 1.0)
        throw std::invalid_argument("solve_t_for_isolation: target must be in [0,1]");

    const double b2 = 1.0 - alpha * alpha;
    const double s = std::sin(phi);
    const auto iso = [&](double t) {
        const double t2 = t * t;
        const double num = std::sqrt(1.0 - t2) + (alpha / b2) * t2 * s;
        const double den = 1.0 + (alpha * alpha / b2) * t2;
        return (num / den) * (num / den);
    };

    // Full-isolation point: sqrt(1-t^2) = (alpha/beta^2) t^2 sin(-phi).
    // Solve the quadratic in t^2 when sin(phi) < 0; otherwise |S12| never
    // vanishes and the only bracket is the decreasing part toward t = 1.
    double t_hi = 1.0;
    if (s < 0.0) {
        const double k = (alpha / b2) * (-s);
        // Stable form of (-1 + sqrt(1 + 4 k^2)) / (2 k^2).
        const double u = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * k * k));
        t_hi = std::sqrt(u);
    }
    if (iso(0.0) < target_iso_power || iso(t_hi) > target_iso_power)
        throw std::runtime_error("solve_t_for_isolation: no root in [0,1] for this target");

    double lo = 0.0, hi = t_hi;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        (iso(mid) > target_iso_power ? lo : hi) = mid;
    }
    // Polish the bracket midpoint against the target.
    double t = 0.5 * (lo + hi);
    if (std::abs(iso(hi) - target_iso_power) < std::abs(iso(t) - target_iso_power)) t = hi;
    if (std::abs(iso(lo) - target_iso_power) < std::abs(iso(t) - target_iso_power)) t = lo;
    return t;
}

}  // namespace paramnet::mpijis

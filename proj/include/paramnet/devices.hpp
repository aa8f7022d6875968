/// S-matrix factories for the network elements: JPC frequency converters,
/// 90-degree hybrid, effective coupler, lines, loads, circulator,
/// directional coupler, and the stepped-impedance filter.
#pragma once

#include "paramnet/wave.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace paramnet {

inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = std::numbers::pi;

/// One Josephson parametric converter in frequency-conversion mode.
struct JpcParams {
    double rho = 0.0;         // dimensionless pump amplitude, 0..1
    double pump_phase = 0.0;  // radians
    double omega_a = 0.0;     // rad/s
    double omega_b = 0.0;     // rad/s
    double kappa_a = 0.0;     // rad/s
    double kappa_b = 0.0;     // rad/s

    void validate() const {
        if (rho < 0.0 || rho > 1.0)
            throw std::invalid_argument("JpcParams: rho must be in [0,1]");
        if (kappa_a <= 0.0 || kappa_b <= 0.0)
            throw std::invalid_argument("JpcParams: kappa_a, kappa_b must be positive");
        if (!(omega_b > omega_a))
            throw std::invalid_argument("JpcParams: omega_b must exceed omega_a");
    }
};

/// Effective coupler joining the internal b-ports; beta is derived so that
/// alpha^2 + beta^2 = 1 holds exactly.
struct CouplerParams {
    double alpha = 1.0 / std::numbers::sqrt2;

    explicit CouplerParams(double a = 1.0 / std::numbers::sqrt2) : alpha(a) {
        if (alpha < 0.0 || alpha > 1.0)
            throw std::invalid_argument("CouplerParams: alpha must be in [0,1]");
    }
    double beta() const { return std::sqrt(1.0 - alpha * alpha); }
};

struct LineParams {
    double phase = 2.0 * pi;  // radians at the carrier channel
    double loss = 1.0;        // amplitude factor, (0,1]

    void validate() const {
        if (loss <= 0.0 || loss > 1.0)
            throw std::invalid_argument("LineParams: loss must be in (0,1]");
    }
};

/// Stepped-impedance transmission-line filter geometry.
struct SteppedFilterParams {
    std::vector<std::pair<double, double>> sections;  // (impedance ohm, length m)
    double eps_eff = 5.5;  // effective relative permittivity (not given by the geometry; configurable)
    double z0 = 50.0;

    void validate() const {
        if (sections.empty())
            throw std::invalid_argument("SteppedFilterParams: at least one section required");
        for (const auto& [z, l] : sections)
            if (z <= 0.0 || l <= 0.0)
                throw std::invalid_argument("SteppedFilterParams: impedances and lengths must be positive");
        if (eps_eff <= 0.0 || z0 <= 0.0)
            throw std::invalid_argument("SteppedFilterParams: eps_eff and z0 must be positive");
    }

    /// Five alternating sections, low-high-low-high-low.
    static SteppedFilterParams five_section(double z_lo = 25.0, double l_lo = 8.5e-3,
                                            double z_hi = 120.0, double l_hi = 6.5e-3) {
        SteppedFilterParams p;
        p.sections = {{z_lo, l_lo}, {z_hi, l_hi}, {z_lo, l_lo}, {z_hi, l_hi}, {z_lo, l_lo}};
        return p;
    }
};

/// On-resonance JPC conversion amplitudes: r = (1-rho^2)/(1+rho^2), t = 2rho/(1+rho^2).
inline std::pair<double, double> jpc_rt(double rho) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("jpc_rt: rho must be in [0,1]");
    const double d = 1.0 + rho * rho;
    return {(1.0 - rho * rho) / d, 2.0 * rho / d};
}

/// Inverse bare response function 1 - 2i(omega - omega_res)/kappa.
inline Complex chi_inv(double omega, double omega_res, double kappa) {
    return {1.0, -2.0 * (omega - omega_res) / kappa};
}

/// Frequency-dependent conversion amplitude t[w] = 2 rho / (chi_a^-1 chi_b^-1 + rho^2).
/// Both response functions are evaluated at the signal detuning omega - omega_a,
/// since the pump pins omega_2 - omega_1 = omega_b - omega_a.
inline Complex jpc_t_of_omega(const JpcParams& p, double signal_omega) {
    const Complex xa = chi_inv(signal_omega, p.omega_a, p.kappa_a);
    const Complex xb{1.0, -2.0 * (signal_omega - p.omega_a) / p.kappa_b};
    return 2.0 * p.rho / (xa * xb + p.rho * p.rho);
}

/// 2x2 JPC scattering matrix over ports a (channel f1) and b (channel f2).
/// Reflections follow the same response functions as the transmission, so the
/// matrix is unitary for any real detuning. Transmission a->b carries
/// exp(+i phi_p), b->a carries exp(-i phi_p); the b-port reflection picks up
/// the opposite sign of the a-port one.
inline ScatterMatrix jpc_smatrix(const JpcParams& p, double signal_omega,
                                 const std::string& id = "jpc") {
    p.validate();
    const Complex xa = chi_inv(signal_omega, p.omega_a, p.kappa_a);
    const Complex xb{1.0, -2.0 * (signal_omega - p.omega_a) / p.kappa_b};
    const double rho2 = p.rho * p.rho;
    const Complex den = xa * xb + rho2;
    const Complex t = 2.0 * p.rho / den;
    const Complex r_a = (std::conj(xa) * xb - rho2) / den;
    const Complex r_b = -(xa * std::conj(xb) - rho2) / den;
    const Complex ph = std::polar(1.0, p.pump_phase);

    Matrix m(2, 2);
    m << r_a, t / ph,  //
        t * ph, r_b;
    return {{{id, "a", Channel::f1}, {id, "b", Channel::f2}}, std::move(m)};
}

/// 90-degree hybrid: externals {1,2}, internals {1p,2p}; through amplitude
/// 1/sqrt(2), coupled amplitude i/sqrt(2), no reflection.
inline ScatterMatrix hybrid90_smatrix(const std::string& id = "hybrid") {
    const Complex s = 1.0 / std::numbers::sqrt2;
    const Complex is = Complex{0.0, 1.0} / std::numbers::sqrt2;
    Matrix m(4, 4);
    m << 0, 0, s, is,  //
        0, 0, is, s,   //
        s, is, 0, 0,   //
        is, s, 0, 0;
    return {{{id, "1", Channel::f1},
             {id, "2", Channel::f1},
             {id, "1p", Channel::f1},
             {id, "2p", Channel::f1}},
            std::move(m)};
}

/// Fictitious coupler on the internal b rail, over ports {b1, b2, 3, 4}.
/// Direct amplitude alpha between the rails, cross amplitude beta to the
/// loads. The sign convention (-alpha through, -beta cross, +alpha between
/// the load ports) is the one under which the composed network reproduces
/// the device's closed-form scattering parameters.
inline ScatterMatrix effective_coupler_smatrix(const CouplerParams& p,
                                               const std::string& id = "coupler") {
    const double a = p.alpha;
    const double b = p.beta();
    Matrix m(4, 4);
    m << 0, -a, -b, 0,  //
        -a, 0, 0, -b,   //
        -b, 0, 0, a,    //
        0, -b, a, 0;
    return {{{id, "b1", Channel::f2},
             {id, "b2", Channel::f2},
             {id, "3", Channel::f2},
             {id, "4", Channel::f2}},
            std::move(m)};
}

/// Matched two-port line: off-diagonal loss * exp(i phase).
inline ScatterMatrix line_smatrix(const LineParams& p, const std::string& id = "line",
                                  Channel ch = Channel::f2) {
    p.validate();
    const Complex g = p.loss * std::polar(1.0, p.phase);
    Matrix m(2, 2);
    m << 0, g,  //
        g, 0;
    return {{{id, "p1", ch}, {id, "p2", ch}}, std::move(m)};
}

/// Matched termination: 1x1 zero reflection.
inline ScatterMatrix load_smatrix(const std::string& id = "load", Channel ch = Channel::f1) {
    Matrix m(1, 1);
    m << 0;
    return {{{id, "p", ch}}, std::move(m)};
}

/// Ideal three-port circulator: cyclic permutation 1 -> 2 -> 3 -> 1.
inline ScatterMatrix circulator_smatrix(const std::string& id = "circ",
                                        Channel ch = Channel::f1) {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 0) = 1;
    m(2, 1) = 1;
    m(0, 2) = 1;
    return {{{id, "1", ch}, {id, "2", ch}, {id, "3", ch}}, std::move(m)};
}

/// Ideal lossless directional coupler: coupled amplitude c = 10^(dB/20),
/// through sqrt(1 - c^2), isolated 0. Ports {1,2,3,4}: 1-2 and 3-4 through,
/// 1-3 and 2-4 coupled (90 degrees out of phase), 1-4 and 2-3 isolated.
inline ScatterMatrix directional_coupler_smatrix(double coupling_db,
                                                 const std::string& id = "dc",
                                                 Channel ch = Channel::f1) {
    if (coupling_db >= 0.0)
        throw std::invalid_argument("directional_coupler_smatrix: coupling_db must be negative");
    const double c = std::pow(10.0, coupling_db / 20.0);
    const double th = std::sqrt(1.0 - c * c);
    const Complex ic{0.0, c};
    Matrix m(4, 4);
    m << 0, th, ic, 0,  //
        th, 0, 0, ic,   //
        ic, 0, 0, th,   //
        0, ic, th, 0;
    return {{{id, "1", ch}, {id, "2", ch}, {id, "3", ch}, {id, "4", ch}}, std::move(m)};
}

/// 2x2 response of the stepped-impedance filter at a given frequency, by
/// chain-matrix cascade of ideal lossless line sections referenced to z0.
inline ScatterMatrix stepped_filter_smatrix(const SteppedFilterParams& p, double freq_hz,
                                            const std::string& id = "filter") {
    p.validate();
    if (freq_hz <= 0.0)
        throw std::invalid_argument("stepped_filter_smatrix: frequency must be positive");

    const double beta = 2.0 * pi * freq_hz * std::sqrt(p.eps_eff) / speed_of_light;
    Eigen::Matrix2cd abcd = Eigen::Matrix2cd::Identity();
    for (const auto& [z, len] : p.sections) {
        const double bl = beta * len;
        Eigen::Matrix2cd sec;
        sec << std::cos(bl), Complex{0.0, z * std::sin(bl)},  //
            Complex{0.0, std::sin(bl) / z}, std::cos(bl);
        abcd = abcd * sec;
    }
    const Complex A = abcd(0, 0), B = abcd(0, 1), C = abcd(1, 0), D = abcd(1, 1);
    const Complex den = A + B / p.z0 + C * p.z0 + D;
    Matrix m(2, 2);
    m << (A + B / p.z0 - C * p.z0 - D) / den, 2.0 * (A * D - B * C) / den,  //
        2.0 / den, (-A + B / p.z0 - C * p.z0 + D) / den;
    return {{{id, "1", Channel::f1}, {id, "2", Channel::f1}}, std::move(m)};
}

}  // namespace paramnet

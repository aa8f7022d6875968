/// Dispersive-readout backaction and fidelity relations.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace paramnet::qubit {

/// Dispersive-readout chain parameters.
struct ReadoutParams {
    double kappa = 0.0;   // effective readout linewidth, rad/s
    double chi = 0.0;     // dispersive shift, rad/s
    double nbar = 0.0;    // average readout photons
    double eta = 1.0;     // measurement efficiency, (0,1]
    double t_int = 0.0;   // integration time, s
    double t_r = 0.0;     // readout pulse duration, s
    double n_th = 0.0;    // thermal photons

    void validate() const {
        if (kappa <= 0.0 || chi <= 0.0)
            throw std::invalid_argument("ReadoutParams: kappa and chi must be positive");
        if (eta <= 0.0 || eta > 1.0)
            throw std::invalid_argument("ReadoutParams: eta must be in (0,1]");
        if (nbar < 0.0 || t_int <= 0.0 || n_th < 0.0)
            throw std::invalid_argument("ReadoutParams: nbar, t_int, n_th out of range");
    }
};

struct CoherenceRecord {
    double t1 = 0.0;     // s
    double t2e = 0.0;    // s
    double t_phi = 0.0;  // s, derived
    double n_ba = 0.0;   // backaction photons, derived
    bool clamped = false;  // n_ba was slightly negative and clamped to zero
};

/// Photon shot-noise dephasing rate Gamma_phi = nbar kappa chi^2 / (kappa^2 + chi^2).
inline double dephasing_rate(double nbar_total, double kappa, double chi) {
    if (nbar_total < 0.0 || kappa <= 0.0 || chi < 0.0)
        throw std::invalid_argument("dephasing_rate: inputs out of range");
    return nbar_total * kappa * chi * chi / (kappa * kappa + chi * chi);
}

/// From measured (T1, T2E) and the fixed chain parameters, recovers the pure
/// dephasing time 1/(1/T2E - 1/2T1) and the backaction photon number
/// n_ba = Gamma_phi (kappa^2 + chi^2)/(kappa chi^2) - n_th. Values within
/// -0.01 of zero are clamped (baseline noise); larger negatives are errors.
inline CoherenceRecord extract_backaction(double t1, double t2e, const ReadoutParams& rp) {
    if (t1 <= 0.0 || t2e <= 0.0)
        throw std::invalid_argument("extract_backaction: T1 and T2E must be positive");
    if (t2e >= 2.0 * t1)
        throw std::invalid_argument("extract_backaction: invalid record, T2E must be below 2*T1");
    CoherenceRecord rec;
    rec.t1 = t1;
    rec.t2e = t2e;
    const double gamma_phi = 1.0 / t2e - 1.0 / (2.0 * t1);
    rec.t_phi = 1.0 / gamma_phi;
    const double nbar =
        gamma_phi * (rp.kappa * rp.kappa + rp.chi * rp.chi) / (rp.kappa * rp.chi * rp.chi);
    rec.n_ba = nbar - rp.n_th;
    if (rec.n_ba < 0.0) {
        if (rec.n_ba < -0.01)
            throw std::invalid_argument(
                "extract_backaction: backaction photon number is significantly negative");
        rec.n_ba = 0.0;
        rec.clamped = true;
    }
    return rec;
}

/// Qubit-state-dependent phase shift of the readout signal: tan(theta/2) = chi/kappa.
inline double dispersive_phase(double chi, double kappa) {
    if (chi < 0.0 || kappa <= 0.0)
        throw std::invalid_argument("dispersive_phase: inputs out of range");
    return 2.0 * std::atan(chi / kappa);
}

/// Histogram separation Ibar/sigma = sqrt(2 nbar eta kappa t_int) sin(theta/2).
inline double readout_snr(const ReadoutParams& rp, double theta) {
    rp.validate();
    return std::sqrt(2.0 * rp.nbar * rp.eta * rp.kappa * rp.t_int) * std::sin(theta / 2.0);
}

/// Efficiency that would produce the given histogram separation.
inline double efficiency_for_snr(const ReadoutParams& rp, double theta, double snr) {
    if (snr < 0.0) throw std::invalid_argument("efficiency_for_snr: snr must be nonnegative");
    const double base = 2.0 * rp.nbar * rp.kappa * rp.t_int;
    const double s = std::sin(theta / 2.0);
    if (base <= 0.0 || s <= 0.0)
        throw std::invalid_argument("efficiency_for_snr: degenerate readout parameters");
    return snr * snr / (base * s * s);
}

/// Two-Gaussian overlap fidelity F = 1 - erfc(snr/sqrt(2))/2. Ignores decay
/// during readout, so it upper-bounds measured fidelities.
inline double gaussian_fidelity(double snr) {
    if (snr < 0.0) throw std::invalid_argument("gaussian_fidelity: snr must be nonnegative");
    return 1.0 - 0.5 * std::erfc(snr / std::sqrt(2.0));
}

}  // namespace paramnet::qubit

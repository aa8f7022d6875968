// Acceptance suite: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Criterion 11 lists measurement fixtures that are documentation
// constants only and is never gated.
#include "paramnet/devices.hpp"
#include "paramnet/mpijis.hpp"
#include "paramnet/mpijis_network.hpp"
#include "paramnet/netgraph.hpp"
#include "paramnet/qubit.hpp"
#include "paramnet/wave.hpp"

#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace paramnet;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok,
            const std::string& detail = "") {
    std::printf("criterion %2d: %s  %s%s%s\n", criterion, ok ? "PASS" : "FAIL", label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

const double rt2 = std::numbers::sqrt2;
const Complex I{0.0, 1.0};

bool criterion1() {
    const auto S = mpijis::full_smatrix(mpijis::MpijisParams{});  // ideal working point
    Matrix want(4, 4);
    want << 0, 0, -1 / rt2, -1 / rt2,                              //
        I * 2.0 * rt2 / 3.0, 0, -I / (3 * rt2), I / (3 * rt2),     //
        -1 / (3 * rt2), -I / rt2, -rt2 / 3, rt2 / 3,               //
        1 / (3 * rt2), -I / rt2, rt2 / 3, -rt2 / 3;
    bool ok = max_diff(S.data, want) < 1e-12;
    ok = ok && std::abs(std::abs(S.data(1, 0)) - 2.0 * rt2 / 3.0) < 1e-12;
    ok = ok && std::abs(db_power(S.data(1, 0)) - (-0.511525)) < 1e-2;
    ok = ok && std::abs(S.data(0, 1)) < 1e-12;  // S12
    ok = ok && std::abs(S.data(0, 0)) < 1e-12;  // S11
    ok = ok && std::abs(S.data(1, 1)) < 1e-12;  // S22
    return ok;
}

bool criterion2() {
    // Pumps off (rho = 0 so t = 0): transparent two-port, loads reflect -1.
    const double t = jpc_rt(0.0).second;
    const auto S = mpijis::full_smatrix(mpijis::MpijisParams{t, 1.0 / rt2});
    Matrix want = Matrix::Zero(4, 4);
    want(0, 1) = want(1, 0) = I;
    want(2, 2) = want(3, 3) = -1.0;
    return max_diff(S.data, want) < 1e-15;
}

struct Draw {
    mpijis::MpijisParams p;
};

std::vector<Draw> random_draws(int n, unsigned seed) {
    std::mt19937 g(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0), angle(0.0, 2.0 * pi);
    std::vector<Draw> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        mpijis::MpijisParams p;
        p.t = std::min(unit(g), 0.999999);
        p.alpha = std::min(unit(g), 0.999999);
        p.phi1 = angle(g);
        p.phi2 = angle(g);
        out.push_back({p});
    }
    return out;
}

JpcParams random_bias(std::mt19937& g) {
    std::uniform_real_distribution<double> rho(0.05, 0.95);
    JpcParams j;
    j.rho = rho(g);
    j.omega_a = 2.0 * pi * 6.0e9;
    j.omega_b = 2.0 * pi * 9.0e9;
    j.kappa_a = 2.0 * pi * 10.0e6;
    j.kappa_b = 2.0 * pi * 12.0e6;
    return j;
}

// Shared by criteria 3 and 4: composition-vs-closed-form agreement and the
// unitarity of the lossless (on-resonance, real-amplitude) matrices.
struct OracleResult {
    double worst_onres = 0.0;
    double worst_sweep = 0.0;
    bool unitary = true;
};

OracleResult run_oracle() {
    OracleResult res;
    for (const auto& [p] : random_draws(500, 20260823)) {
        const auto closed = mpijis::full_smatrix(p);
        const auto explicit_form = mpijis::full_smatrix_explicit(p);
        const auto composed = compose(mpijis::build_network(p));
        res.worst_onres = std::max(res.worst_onres, max_diff(closed.data, composed.data));
        res.worst_onres = std::max(res.worst_onres, max_diff(closed.data, explicit_form.data));
        const Tolerance tol{1e-9, 1e-9};
        if (!is_unitary(closed, tol) || !is_unitary(composed, tol)) res.unitary = false;
    }
    std::mt19937 g(8250622);
    for (int b = 0; b < 3; ++b) {
        const auto jpc = random_bias(g);
        mpijis::MpijisParams p;
        p.t = jpc_rt(jpc.rho).second;
        p.alpha = std::uniform_real_distribution<double>(0.1, 0.95)(g);
        p.phi1 = std::uniform_real_distribution<double>(0.0, 2.0 * pi)(g);
        p.phi2 = std::uniform_real_distribution<double>(0.0, 2.0 * pi)(g);
        std::vector<double> omegas;
        for (int k = -100; k <= 100; ++k)
            omegas.push_back(jpc.omega_a + k * 0.05 * jpc.kappa_a);
        const auto swept = compose_sweep(mpijis::network_builder(p, jpc), omegas);
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            const auto closed = mpijis::full_smatrix_at(p, jpc, omegas[i]);
            res.worst_sweep = std::max(res.worst_sweep, max_diff(closed.data, swept[i].data));
        }
    }
    return res;
}

bool criterion5() {
    const double a = mpijis::added_noise(8.0 / 9.0).n_add;
    const double b = mpijis::added_noise(0.5).n_add;
    // "exact by formula": both anchors to machine precision.
    return std::abs(a - 1.0 / 16.0) < 1e-15 && b == 0.5;
}

bool criterion6() {
    const mpijis::MpijisParams base{1.0 / rt2, 1.0 / rt2};
    std::vector<double> phis;
    const int n = 1601;
    for (int k = 0; k < n; ++k) phis.push_back(-2.0 * pi + 4.0 * pi * k / (n - 1));
    const auto rows = mpijis::phase_sweep(base, phis);

    // |S21|^2 maxima exactly at phi = -pi/2 + 2 pi k within the window.
    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r.s21);
    bool ok = true;
    for (const auto& r : rows) {
        const double dist = std::abs(std::remainder(r.phi - (-pi / 2.0), 2.0 * pi));
        if (r.s21 > best - 1e-9 && dist > 1e-2) ok = false;         // off-peak maximum
        if (dist < 1e-12 && std::abs(r.s21 - best) > 1e-12) ok = false;  // peak not maximal
    }

    // Shifting the pump phase difference by pi swaps forward and backward.
    std::mt19937 g(606060);
    std::uniform_real_distribution<double> angle(-2.0 * pi, 2.0 * pi);
    for (int k = 0; k < 200; ++k) {
        const double phi = angle(g);
        const auto a = mpijis::phase_sweep(base, {phi}).front();
        const auto b = mpijis::phase_sweep(base, {phi + pi}).front();
        if (std::abs(a.s21 - b.s12) > 1e-12 || std::abs(a.s12 - b.s21) > 1e-12) ok = false;
    }
    return ok;
}

bool criterion7() {
    bool ok = true;
    double prev_s21 = 0.0, prev_s23 = 1.0;
    for (int k = 0; k <= 79; ++k) {
        const double alpha = 0.2 + (0.99 - 0.2) * k / 79.0;
        const double t = mpijis::solve_t_for_isolation(alpha, 0.01);
        const auto p = mpijis::MpijisParams::from_phase_diff(t, alpha, -pi / 2.0);
        const Matrix S = mpijis::full_smatrix(p).data;
        if (std::abs(std::norm(S(0, 1)) - 0.01) > 1e-10) ok = false;
        const double s21 = std::norm(S(1, 0));
        const double s23 = std::norm(S(1, 2));
        if (s21 < prev_s21 - 1e-12) ok = false;  // monotone toward 1
        if (s23 > prev_s23 + 1e-12) ok = false;  // monotone toward 0
        prev_s21 = s21;
        prev_s23 = s23;
    }
    if (!(prev_s21 > 0.995 && prev_s23 < 0.01)) ok = false;
    return ok;
}

bool criterion8() {
    qubit::ReadoutParams rp;
    rp.kappa = 2.0 * pi * 7.99e6;
    rp.chi = 2.0 * pi * 3.4e6;
    rp.n_th = 0.004;
    const double rows[6][4] = {
        {39.0, 24.2, 35.1, 0.00}, {39.2, 7.6, 8.4, 0.01}, {19.2, 0.1, 0.1, 1.29},
        {37.6, 5.5, 5.9, 0.02},   {40.9, 3.7, 3.9, 0.03}, {22.0, 0.2, 0.2, 0.64}};
    for (const auto& row : rows) {
        const auto rec = qubit::extract_backaction(row[0] * 1e-6, row[1] * 1e-6, rp);
        if (std::abs(rec.t_phi * 1e6 - row[2]) > 0.1) return false;
        if (std::abs(rec.n_ba - row[3]) > 0.02) return false;
    }
    return true;
}

bool criterion9() {
    qubit::ReadoutParams rp;
    rp.kappa = 2.0 * pi * 7.99e6;
    rp.chi = 2.0 * pi * 3.4e6;
    rp.n_th = 0.004;
    rp.nbar = 6.4;
    rp.eta = 0.32;
    rp.t_int = 150e-9;
    rp.t_r = 200e-9;
    const double theta = qubit::dispersive_phase(rp.chi, rp.kappa);
    if (std::abs(theta * 180.0 / pi - 46.0) > 0.5) return false;
    const double snr = qubit::readout_snr(rp, theta);
    if (std::abs(snr - 2.2) > 0.05) return false;
    const double eta = qubit::efficiency_for_snr(rp, theta, 2.2);
    return std::abs(eta - 0.32) <= 0.01;
}

bool criterion10() {
    const auto p = SteppedFilterParams::five_section();  // documented eps_eff = 5.5
    double stop_min_db = 0.0;
    double pass_max_db = -1e9;
    for (double f = 4.0e9; f <= 8.0e9; f += 2e6) {
        const auto m = stepped_filter_smatrix(p, f);
        if (std::abs(std::norm(m.data(0, 0)) + std::norm(m.data(1, 0)) - 1.0) > 1e-9)
            return false;  // lossless
        if (std::abs(m.data(1, 0) - m.data(0, 1)) > 1e-9) return false;  // reciprocal
        const double s21_db = db_power(m.data(1, 0));
        if (f >= 4.7e9 && f <= 5.7e9) stop_min_db = std::min(stop_min_db, s21_db);
        if (f >= 6.2e9 && f <= 7.2e9) pass_max_db = std::max(pass_max_db, s21_db);
    }
    return stop_min_db <= -15.0 && pass_max_db >= -1.0;
}

}  // namespace

int main() {
    report(1, "ideal-point isolator matrix and figures of merit", criterion1());
    report(2, "off-state transparency (exact special-case matrix)", criterion2());

    const auto oracle = run_oracle();
    {
        char detail[128];
        std::snprintf(detail, sizeof(detail),
                      "max |closed - composed|: on-resonance %.2e, swept %.2e",
                      oracle.worst_onres, oracle.worst_sweep);
        report(3, "composition matches the closed form (500 draws + 3 sweeps)",
               oracle.worst_onres < 1e-10 && oracle.worst_sweep < 1e-10, detail);
    }
    report(4, "unitarity of every lossless composite and closed-form matrix",
           oracle.unitary);
    report(5, "added-noise anchors n_add(8/9) = 1/16 and n_add(1/2) = 1/2", criterion5());
    report(6, "phase-sweep periodicity and pi-shift direction reversal", criterion6());
    report(7, "alpha sweep at fixed 20 dB isolation (|S12|^2 = 0.01)", criterion7());
    report(8, "coherence-table regeneration (six configurations)", criterion8());
    report(9, "readout-chain numbers: theta, SNR, efficiency", criterion9());
    report(10, "stepped-impedance filter: lossless, stopband, passband", criterion10());

    std::printf(
        "criterion 11: INFO  measurement-only fixtures, recorded in docs/fixtures.md and "
        "never gated: insertion loss -1.8 dB; isolation dip -20.3 dB over 11 MHz; "
        "saturation P+1dB = -108 dBm; pump leakage peak at 2.8 GHz; readout fidelities "
        "0.75/0.67/0.98/0.95/0.52/0.58\n");

    if (failures == 0) {
        std::printf("acceptance: all gated criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}

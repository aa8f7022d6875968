// paramnet command-line front end: parameter sweeps, network composition,
// backaction reports, and Touchstone export, driven by one config file.
#include "paramnet/config.hpp"
#include "paramnet/devices.hpp"
#include "paramnet/io.hpp"
#include "paramnet/mpijis.hpp"
#include "paramnet/mpijis_network.hpp"
#include "paramnet/netgraph.hpp"
#include "paramnet/qubit.hpp"
#include "paramnet/wave.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace paramnet;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliArgs {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> points;
    std::optional<std::string> input;       // qubit-backaction records CSV
    std::optional<double> kappa_mhz;        // qubit-backaction overrides
    std::optional<double> chi_mhz;
    std::optional<double> n_th;
};

void apply_overrides(RunConfig& cfg, const CliArgs& a) {
    if (a.out) cfg.output_path = *a.out;
    if (a.format) {
        if (*a.format == "csv")
            cfg.format = OutputFormat::csv;
        else if (*a.format == "touchstone")
            cfg.format = OutputFormat::touchstone;
        else
            throw ConfigError("config: constraint violated for \"--format\": expected csv or "
                              "touchstone, got \"" + *a.format + "\"");
    }
    if (a.points) {
        if (*a.points < 2)
            throw ConfigError("config: constraint violated for \"--points\": integer >= 2");
        cfg.sweep.points = *a.points;
    }
    if (a.input) cfg.backaction_input = *a.input;
    if (a.kappa_mhz) cfg.readout.kappa = 2.0 * pi * *a.kappa_mhz * 1e6;
    if (a.chi_mhz) cfg.readout.chi = 2.0 * pi * *a.chi_mhz * 1e6;
    if (a.n_th) cfg.readout.n_th = *a.n_th;
    if (cfg.output_path.empty())
        throw ConfigError("config: missing required key \"output.path\" (or pass --out)");
}

void run_sweep_phase(const RunConfig& cfg) {
    const auto rows = mpijis::phase_sweep(cfg.mpijis, cfg.sweep.values());
    io::Table t;
    t.header = {"phi", "S11_dB", "S21_dB", "S12_dB", "S31_dB", "S23_dB", "S13_dB", "S32_dB"};
    const auto db = [](double p) {
        return p > 0.0 ? 10.0 * std::log10(p) : -std::numeric_limits<double>::infinity();
    };
    for (const auto& r : rows)
        t.rows.push_back({r.phi, db(r.s11), db(r.s21), db(r.s12), db(r.s31), db(r.s23),
                          db(r.s13), db(r.s32)});
    io::write_csv(cfg.output_path, t);
}

void run_sweep_alpha(const RunConfig& cfg) {
    io::Table t;
    t.header = {"alpha", "t", "S21_dB", "S12_dB", "S13_dB", "S23_dB"};
    for (double alpha : cfg.sweep.values()) {
        const double tt = mpijis::solve_t_for_isolation(alpha, cfg.target_iso, cfg.mpijis.phi());
        const auto p = mpijis::MpijisParams::from_phase_diff(tt, alpha, cfg.mpijis.phi(),
                                                             cfg.mpijis.phi_sum());
        const Matrix S = mpijis::full_smatrix(p).data;
        t.rows.push_back({alpha, tt, db_power(S(1, 0)), db_power(S(0, 1)), db_power(S(0, 2)),
                          db_power(S(1, 2))});
    }
    io::write_csv(cfg.output_path, t);
}

void run_sweep_freq(const RunConfig& cfg) {
    std::vector<std::pair<double, ScatterMatrix>> mats;
    for (double f : cfg.sweep.values()) {
        const double omega = 2.0 * pi * f * 1e9;
        mats.emplace_back(f, mpijis::full_smatrix_at(cfg.mpijis, cfg.jpc, omega));
    }
    if (cfg.format == OutputFormat::touchstone) {
        io::write_touchstone(cfg.output_path, mats);
        return;
    }
    io::Table t;
    t.header = {"freq_ghz", "S21_dB", "S12_dB", "S11_dB", "S22_dB"};
    for (const auto& [f, m] : mats)
        t.rows.push_back({f, db_power(m.data(1, 0)), db_power(m.data(0, 1)),
                          db_power(m.data(0, 0)), db_power(m.data(1, 1))});
    io::write_csv(cfg.output_path, t);
}

void run_compose(const RunConfig& cfg) {
    const ScatterMatrix S = compose(mpijis::build_network(cfg.mpijis, cfg.line));
    io::Table t;
    t.header = {"row", "col", "re", "im", "mag_dB"};
    for (Eigen::Index i = 0; i < S.size(); ++i)
        for (Eigen::Index j = 0; j < S.size(); ++j)
            t.rows.push_back({static_cast<double>(i + 1), static_cast<double>(j + 1),
                              S.data(i, j).real(), S.data(i, j).imag(), db_power(S.data(i, j))});
    io::write_csv(cfg.output_path, t);
}

void run_qubit_backaction(const RunConfig& cfg) {
    if (cfg.backaction_input.empty())
        throw ConfigError(
            "config: missing required key \"backaction.input\" (or pass --input)");
    const auto records = io::read_coherence_csv(cfg.backaction_input);
    std::ostringstream out;
    out << "label,T1_us,T2E_us,Tphi_us,n_ba\n";
    std::printf("%-8s %8s %8s %8s %8s\n", "label", "T1_us", "T2E_us", "Tphi_us", "n_ba");
    for (const auto& rec : records) {
        const auto c =
            qubit::extract_backaction(rec.t1_us * 1e-6, rec.t2e_us * 1e-6, cfg.readout);
        out << rec.label << "," << io::format_number(rec.t1_us) << ","
            << io::format_number(rec.t2e_us) << "," << io::format_number(c.t_phi * 1e6) << ","
            << io::format_number(c.n_ba) << "\n";
        std::printf("%-8s %8.1f %8.1f %8.1f %8.2f\n", rec.label.c_str(), rec.t1_us, rec.t2e_us,
                    c.t_phi * 1e6, c.n_ba);
    }
    io::write_file(cfg.output_path, out.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paramnet: scattering-parameter simulator for parametric "
                 "frequency-converting microwave networks"};
    app.require_subcommand(1);

    std::map<paramnet::RunMode, CliArgs> args;
    for (auto mode : {RunMode::sweep_freq, RunMode::sweep_phase, RunMode::sweep_alpha,
                      RunMode::compose, RunMode::qubit_backaction,
                      RunMode::export_touchstone}) {
        auto* sub = app.add_subcommand(paramnet::to_string(mode), "");
        auto& a = args[mode];
        sub->add_option("config", a.config, "run configuration file")->required();
        sub->add_option("--out", a.out, "override output.path");
        sub->add_option("--format", a.format, "override output.format (csv|touchstone)");
        sub->add_option("--points", a.points, "override sweep.points");
        if (mode == RunMode::qubit_backaction) {
            sub->add_option("--input", a.input, "records CSV (label,T1_us,T2E_us)");
            sub->add_option("--kappa-mhz", a.kappa_mhz, "override readout.kappa_mhz");
            sub->add_option("--chi-mhz", a.chi_mhz, "override readout.chi_mhz");
            sub->add_option("--n-th", a.n_th, "override readout.n_th");
        }
    }

    CLI11_PARSE(app, argc, argv);

    paramnet::RunMode mode{};
    for (const auto& [m, a] : args)
        if (app.get_subcommand(paramnet::to_string(m))->parsed()) mode = m;

    try {
        const CliArgs& a = args[mode];
        RunConfig cfg = paramnet::parse_config(read_file(a.config), mode);
        apply_overrides(cfg, a);
        switch (mode) {
            case RunMode::sweep_phase: run_sweep_phase(cfg); break;
            case RunMode::sweep_alpha: run_sweep_alpha(cfg); break;
            case RunMode::sweep_freq: run_sweep_freq(cfg); break;
            case RunMode::export_touchstone: run_sweep_freq(cfg); break;
            case RunMode::compose: run_compose(cfg); break;
            case RunMode::qubit_backaction: run_qubit_backaction(cfg); break;
        }
        return 0;
    } catch (const paramnet::SingularNetworkError& e) {
        std::cerr << "paramnet: numerical-error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "paramnet: validation-error: " << e.what() << "\n";
        return 1;
    }
}

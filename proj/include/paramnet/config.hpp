/// Run configuration: INI-style `key = value` sections, strictly validated
/// (unknown keys are errors). One file drives one reproducible run.
#pragma once

#include "paramnet/devices.hpp"
#include "paramnet/mpijis.hpp"
#include "paramnet/qubit.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace paramnet {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class RunMode {
    sweep_freq,
    sweep_phase,
    sweep_alpha,
    compose,
    qubit_backaction,
    export_touchstone,
};

inline const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::sweep_freq: return "sweep-freq";
        case RunMode::sweep_phase: return "sweep-phase";
        case RunMode::sweep_alpha: return "sweep-alpha";
        case RunMode::compose: return "compose";
        case RunMode::qubit_backaction: return "qubit-backaction";
        case RunMode::export_touchstone: return "export-touchstone";
    }
    return "?";
}

enum class OutputFormat { csv, touchstone };

struct SweepGrid {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;

    std::vector<double> values() const {
        std::vector<double> v(points);
        for (int i = 0; i < points; ++i)
            v[i] = start + (stop - start) * static_cast<double>(i) / (points - 1);
        return v;
    }
};

struct RunConfig {
    RunMode mode = RunMode::compose;
    mpijis::MpijisParams mpijis;
    JpcParams jpc;
    LineParams line;
    qubit::ReadoutParams readout;
    SweepGrid sweep;
    double target_iso = 0.01;          // sweep-alpha backward power target
    std::string backaction_input;      // qubit-backaction records CSV
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
};

namespace detail {

struct RawConfig {
    // section -> key -> (value, consumed)
    std::map<std::string, std::map<std::string, std::pair<std::string, bool>>> data;

    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static RawConfig parse(const std::string& text) {
        RawConfig raw;
        std::istringstream in(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty key or value");
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": key \"" + key + "\" outside any [section]");
            if (raw.data[section].count(key))
                throw ConfigError("config: duplicate key \"" + section + "." + key + "\"");
            raw.data[section][key] = {val, false};
        }
        return raw;
    }

    std::optional<std::string> take(const std::string& section, const std::string& key) {
        auto sit = data.find(section);
        if (sit == data.end()) return std::nullopt;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return std::nullopt;
        kit->second.second = true;
        return kit->second.first;
    }

    std::string require(const std::string& section, const std::string& key) {
        auto v = take(section, key);
        if (!v)
            throw ConfigError("config: missing required key \"" + section + "." + key + "\"");
        return *v;
    }

    double require_double(const std::string& section, const std::string& key) {
        return to_double(section, key, require(section, key));
    }

    std::optional<double> take_double(const std::string& section, const std::string& key) {
        auto v = take(section, key);
        if (!v) return std::nullopt;
        return to_double(section, key, *v);
    }

    static double to_double(const std::string& section, const std::string& key,
                            const std::string& v) {
        std::size_t pos = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &pos);
        } catch (const std::exception&) {
            throw ConfigError("config: type mismatch for \"" + section + "." + key +
                              "\": expected a number, got \"" + v + "\"");
        }
        if (pos != v.size())
            throw ConfigError("config: type mismatch for \"" + section + "." + key +
                              "\": trailing characters in \"" + v + "\"");
        return x;
    }

    void check_all_consumed() const {
        for (const auto& [section, keys] : data)
            for (const auto& [key, vc] : keys)
                if (!vc.second)
                    throw ConfigError("config: unknown key \"" + section + "." + key + "\"");
    }
};

inline void check_range(double v, double lo, double hi, const std::string& name) {
    if (!(v >= lo && v <= hi)) {
        std::ostringstream os;
        os << "config: constraint violated for \"" << name << "\": value " << v
           << " must be in [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
}

inline mpijis::MpijisParams take_mpijis(RawConfig& raw, bool need_t) {
    mpijis::MpijisParams p;
    const auto t = raw.take_double("mpijis", "t");
    if (need_t) {
        if (!t) throw ConfigError("config: missing required key \"mpijis.t\"");
        check_range(*t, 0.0, 1.0, "mpijis.t");
        p.t = *t;
    } else if (t) {
        throw ConfigError("config: unknown key \"mpijis.t\" (t is derived in this mode)");
    }
    const double alpha = raw.require_double("mpijis", "alpha");
    check_range(alpha, 0.0, 1.0, "mpijis.alpha");
    p.alpha = alpha;

    const auto phi1 = raw.take_double("mpijis", "phi1");
    const auto phi2 = raw.take_double("mpijis", "phi2");
    const auto phi = raw.take_double("mpijis", "phi");
    const auto phi_sum = raw.take_double("mpijis", "phi_sum");
    if (phi1 || phi2) {
        if (!(phi1 && phi2) || phi || phi_sum)
            throw ConfigError(
                "config: pump phases must be given as (phi1, phi2) or as (phi [, phi_sum])");
        p.phi1 = *phi1;
        p.phi2 = *phi2;
    } else {
        const double d = phi ? *phi : -pi / 2.0;
        const double s = phi_sum ? *phi_sum : pi / 2.0;
        p.phi1 = 0.5 * (s + d);
        p.phi2 = 0.5 * (s - d);
    }
    return p;
}

inline JpcParams take_jpc(RawConfig& raw) {
    JpcParams j;
    j.rho = raw.require_double("jpc", "rho");
    check_range(j.rho, 0.0, 1.0, "jpc.rho");
    const double fa = raw.require_double("jpc", "f_a_ghz");
    const double fb = raw.require_double("jpc", "f_b_ghz");
    const double ka = raw.require_double("jpc", "kappa_a_mhz");
    const double kb = raw.require_double("jpc", "kappa_b_mhz");
    if (fa <= 0.0 || fb <= fa)
        throw ConfigError("config: constraint violated for \"jpc.f_b_ghz\": need f_b > f_a > 0");
    if (ka <= 0.0 || kb <= 0.0)
        throw ConfigError(
            "config: constraint violated for \"jpc.kappa_a_mhz\"/\"jpc.kappa_b_mhz\": must be positive");
    j.omega_a = 2.0 * pi * fa * 1e9;
    j.omega_b = 2.0 * pi * fb * 1e9;
    j.kappa_a = 2.0 * pi * ka * 1e6;
    j.kappa_b = 2.0 * pi * kb * 1e6;
    return j;
}

inline LineParams take_line(RawConfig& raw) {
    LineParams l;
    if (auto v = raw.take_double("line", "phase")) l.phase = *v;
    if (auto v = raw.take_double("line", "loss")) {
        if (!(*v > 0.0 && *v <= 1.0))
            throw ConfigError("config: constraint violated for \"line.loss\": must be in (0,1]");
        l.loss = *v;
    }
    return l;
}

inline SweepGrid take_sweep(RawConfig& raw) {
    SweepGrid g;
    g.start = raw.require_double("sweep", "start");
    g.stop = raw.require_double("sweep", "stop");
    const double pts = raw.require_double("sweep", "points");
    if (pts < 2.0 || pts != static_cast<int>(pts))
        throw ConfigError("config: constraint violated for \"sweep.points\": integer >= 2");
    if (!(g.start < g.stop))
        throw ConfigError("config: constraint violated for \"sweep.start\": start < stop required");
    g.points = static_cast<int>(pts);
    return g;
}

inline void take_output(RawConfig& raw, RunConfig& cfg, bool required = true) {
    if (auto v = raw.take("output", "path")) {
        cfg.output_path = *v;
    } else if (required) {
        throw ConfigError("config: missing required key \"output.path\"");
    }
    if (auto v = raw.take("output", "format")) {
        if (*v == "csv")
            cfg.format = OutputFormat::csv;
        else if (*v == "touchstone")
            cfg.format = OutputFormat::touchstone;
        else
            throw ConfigError("config: constraint violated for \"output.format\": "
                              "expected csv or touchstone, got \"" + *v + "\"");
    }
}

inline void take_readout(RawConfig& raw, RunConfig& cfg) {
    cfg.readout.kappa = 2.0 * pi * raw.require_double("readout", "kappa_mhz") * 1e6;
    cfg.readout.chi = 2.0 * pi * raw.require_double("readout", "chi_mhz") * 1e6;
    cfg.readout.n_th = raw.require_double("readout", "n_th");
    if (cfg.readout.kappa <= 0.0 || cfg.readout.chi <= 0.0 || cfg.readout.n_th < 0.0)
        throw ConfigError("config: constraint violated in [readout]: kappa_mhz, chi_mhz must be "
                          "positive and n_th nonnegative");
    if (auto v = raw.take_double("readout", "nbar")) cfg.readout.nbar = *v;
    if (auto v = raw.take_double("readout", "eta")) {
        check_range(*v, 0.0, 1.0, "readout.eta");
        cfg.readout.eta = *v;
    }
    if (auto v = raw.take_double("readout", "t_int_ns")) cfg.readout.t_int = *v * 1e-9;
    if (auto v = raw.take_double("readout", "t_r_ns")) cfg.readout.t_r = *v * 1e-9;
}

}  // namespace detail

/// Parses and fully validates one run configuration. The mode selects which
/// sections are consulted; any key that the mode does not consume is an error.
inline RunConfig parse_config(const std::string& text, RunMode mode) {
    auto raw = detail::RawConfig::parse(text);
    RunConfig cfg;
    cfg.mode = mode;

    switch (mode) {
        case RunMode::sweep_phase:
            cfg.mpijis = detail::take_mpijis(raw, /*need_t=*/true);
            cfg.sweep = detail::take_sweep(raw);
            detail::take_output(raw, cfg);
            break;
        case RunMode::sweep_alpha: {
            mpijis::MpijisParams p;
            const auto phi = raw.take_double("mpijis", "phi");
            const auto phi_sum = raw.take_double("mpijis", "phi_sum");
            const double d = phi ? *phi : -pi / 2.0;
            const double s = phi_sum ? *phi_sum : pi / 2.0;
            p.phi1 = 0.5 * (s + d);
            p.phi2 = 0.5 * (s - d);
            cfg.mpijis = p;
            cfg.target_iso = raw.require_double("alpha_sweep", "target_iso");
            detail::check_range(cfg.target_iso, 0.0, 1.0, "alpha_sweep.target_iso");
            cfg.sweep = detail::take_sweep(raw);
            if (!(cfg.sweep.start >= 0.0 && cfg.sweep.stop < 1.0))
                throw ConfigError(
                    "config: constraint violated for \"sweep\": alpha grid must lie in [0,1)");
            detail::take_output(raw, cfg);
            break;
        }
        case RunMode::sweep_freq:
        case RunMode::export_touchstone:
            cfg.mpijis = detail::take_mpijis(raw, /*need_t=*/false);
            cfg.jpc = detail::take_jpc(raw);
            cfg.mpijis.t = jpc_rt(cfg.jpc.rho).second;
            cfg.line = detail::take_line(raw);
            cfg.sweep = detail::take_sweep(raw);
            if (cfg.sweep.start <= 0.0)
                throw ConfigError(
                    "config: constraint violated for \"sweep.start\": frequencies must be positive");
            detail::take_output(raw, cfg);
            if (mode == RunMode::export_touchstone) cfg.format = OutputFormat::touchstone;
            break;
        case RunMode::compose:
            cfg.mpijis = detail::take_mpijis(raw, /*need_t=*/true);
            cfg.line = detail::take_line(raw);
            detail::take_output(raw, cfg);
            break;
        case RunMode::qubit_backaction:
            detail::take_readout(raw, cfg);
            if (auto v = raw.take("backaction", "input")) cfg.backaction_input = *v;
            detail::take_output(raw, cfg);
            break;
    }

    raw.check_all_consumed();
    return cfg;
}

}  // namespace paramnet

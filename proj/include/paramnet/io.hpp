/// Bit-stable result export: CSV tables and Touchstone S-parameter files.
#pragma once

#include "paramnet/wave.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace paramnet::io {

class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Full-precision scientific rendering; -infinity becomes the literal "-inf".
inline std::string format_number(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", x);
    return buf;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline std::string render_csv(const Table& table) {
    if (table.rows.empty()) throw IoError("write_csv: refusing to write an empty table");
    for (const auto& row : table.rows)
        if (row.size() != table.header.size())
            throw IoError("write_csv: ragged table row");
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << "\n";
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

inline void write_csv(const std::string& path, const Table& table) {
    write_file(path, render_csv(table));
}

/// Touchstone v1 text for n-port data (n in {1,2,4}), frequencies in GHz,
/// real/imaginary pairs at 50 ohm reference. Two-port blocks follow the
/// Touchstone column order S11 S21 S12 S22; larger matrices are row-major
/// with one matrix row per line.
inline std::string render_touchstone(
    const std::vector<std::pair<double, ScatterMatrix>>& matrices) {
    if (matrices.empty()) throw IoError("write_touchstone: no data");
    const Eigen::Index n = matrices.front().second.size();
    if (n != 1 && n != 2 && n != 4)
        throw IoError("write_touchstone: only 1-, 2-, and 4-port matrices are supported");

    std::ostringstream out;
    out << "! S-parameters, " << n << "-port\n";
    out << "# GHz S RI R 50\n";
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [freq_ghz, m] : matrices) {
        if (m.size() != n) throw IoError("write_touchstone: dimension mismatch across frequencies");
        if (!(freq_ghz > prev))
            throw IoError("write_touchstone: frequencies must be strictly increasing");
        prev = freq_ghz;
        const auto num = [](double x) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17e", x);
            return std::string(buf);
        };
        if (n == 2) {
            out << num(freq_ghz) << " " << num(m.data(0, 0).real()) << " "
                << num(m.data(0, 0).imag()) << " " << num(m.data(1, 0).real()) << " "
                << num(m.data(1, 0).imag()) << " " << num(m.data(0, 1).real()) << " "
                << num(m.data(0, 1).imag()) << " " << num(m.data(1, 1).real()) << " "
                << num(m.data(1, 1).imag()) << "\n";
        } else {
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i == 0)
                    out << num(freq_ghz);
                for (Eigen::Index j = 0; j < n; ++j)
                    out << " " << num(m.data(i, j).real()) << " " << num(m.data(i, j).imag());
                out << "\n";
            }
        }
    }
    return out.str();
}

inline void write_touchstone(const std::string& path,
                             const std::vector<std::pair<double, ScatterMatrix>>& matrices) {
    write_file(path, render_touchstone(matrices));
}

/// Minimal Touchstone reader (RI format, GHz) used for round-trip checks.
inline std::vector<std::pair<double, Matrix>> read_touchstone(const std::string& path,
                                                              Eigen::Index n_ports) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<double> numbers;
    std::string line;
    bool saw_option = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '!') continue;
        if (line[0] == '#') {
            if (line.find(" GHz ") == std::string::npos || line.find(" RI ") == std::string::npos)
                throw IoError("read_touchstone: unsupported option line: " + line);
            saw_option = true;
            continue;
        }
        std::istringstream ls(line);
        double x;
        while (ls >> x) numbers.push_back(x);
    }
    if (!saw_option) throw IoError("read_touchstone: missing option line");
    const std::size_t block = 1 + 2 * static_cast<std::size_t>(n_ports * n_ports);
    if (numbers.empty() || numbers.size() % block != 0)
        throw IoError("read_touchstone: malformed data block");

    std::vector<std::pair<double, Matrix>> out;
    for (std::size_t b = 0; b < numbers.size(); b += block) {
        const double freq = numbers[b];
        Matrix m(n_ports, n_ports);
        std::size_t k = b + 1;
        if (n_ports == 2) {
            m(0, 0) = {numbers[k], numbers[k + 1]};
            m(1, 0) = {numbers[k + 2], numbers[k + 3]};
            m(0, 1) = {numbers[k + 4], numbers[k + 5]};
            m(1, 1) = {numbers[k + 6], numbers[k + 7]};
        } else {
            for (Eigen::Index i = 0; i < n_ports; ++i)
                for (Eigen::Index j = 0; j < n_ports; ++j) {
                    m(i, j) = {numbers[k], numbers[k + 1]};
                    k += 2;
                }
        }
        out.emplace_back(freq, std::move(m));
    }
    return out;
}

/// Parses a (label, T1_us, T2E_us) records CSV; a leading header row is
/// allowed and skipped.
struct CoherenceInput {
    std::string label;
    double t1_us;
    double t2e_us;
};

inline std::vector<CoherenceInput> read_coherence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::vector<CoherenceInput> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string label, a, b;
        if (!std::getline(ls, label, ',') || !std::getline(ls, a, ',') || !std::getline(ls, b))
            throw IoError("read_coherence_csv: expected label,T1_us,T2E_us in: " + line);
        try {
            out.push_back({label, std::stod(a), std::stod(b)});
        } catch (const std::exception&) {
            if (first) { first = false; continue; }  // header row
            throw IoError("read_coherence_csv: non-numeric record: " + line);
        }
        first = false;
    }
    if (out.empty()) throw IoError("read_coherence_csv: no records in " + path);
    return out;
}

}  // namespace paramnet::io

/// Complex scattering-matrix algebra and port bookkeeping.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace paramnet {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Frequency channel a wave port carries (signal vs internal idler).
enum class Channel { f1, f2 };

inline const char* to_string(Channel c) { return c == Channel::f1 ? "f1" : "f2"; }

/// Identifies one wave port: owning element, port name, frequency channel.
struct PortLabel {
    std::string element;
    std::string port;
    Channel channel = Channel::f1;

    friend bool operator==(const PortLabel& a, const PortLabel& b) {
        return a.element == b.element && a.port == b.port && a.channel == b.channel;
    }

    std::string str() const { return element + "." + port; }
};

struct Tolerance {
    double abs_eps = 1e-9;
    double rel_eps = 1e-9;

    Tolerance() = default;
    Tolerance(double abs_e, double rel_e) : abs_eps(abs_e), rel_eps(rel_e) {
        if (abs_eps <= 0 || rel_eps <= 0)
            throw std::invalid_argument("Tolerance: abs_eps and rel_eps must be positive");
    }
};

/// Square complex scattering matrix with labeled ports.
/// Row/column order matches the `ports` order: data(i, j) is the amplitude
/// from incoming wave at ports[j] to outgoing wave at ports[i].
struct ScatterMatrix {
    std::vector<PortLabel> ports;
    Matrix data;

    ScatterMatrix() = default;
    ScatterMatrix(std::vector<PortLabel> p, Matrix d) : ports(std::move(p)), data(std::move(d)) {
        if (data.rows() != data.cols())
            throw std::invalid_argument("ScatterMatrix: matrix must be square");
        if (static_cast<Eigen::Index>(ports.size()) != data.rows())
            throw std::invalid_argument("ScatterMatrix: port count does not match dimension");
        for (std::size_t i = 0; i < ports.size(); ++i)
            for (std::size_t j = i + 1; j < ports.size(); ++j)
                if (ports[i] == ports[j])
                    throw std::invalid_argument("ScatterMatrix: duplicate port " + ports[i].str());
    }

    Eigen::Index size() const { return data.rows(); }

    Eigen::Index index_of(const PortLabel& p) const {
        for (std::size_t i = 0; i < ports.size(); ++i)
            if (ports[i] == p) return static_cast<Eigen::Index>(i);
        throw std::invalid_argument("ScatterMatrix: unknown port " + p.str());
    }

    Complex at(const PortLabel& out, const PortLabel& in) const {
        return data(index_of(out), index_of(in));
    }
};

inline bool is_unitary(const ScatterMatrix& m, const Tolerance& tol = {}) {
    const Matrix g = m.data.adjoint() * m.data;
    const Matrix id = Matrix::Identity(m.size(), m.size());
    return ((g - id).cwiseAbs().maxCoeff() <= tol.abs_eps);
}

/// Power dB of a wave amplitude; zero maps to -infinity.
inline double db_power(Complex x) {
    const double mag = std::abs(x);
    if (mag == 0.0) return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(mag);
}

inline ScatterMatrix dagger(const ScatterMatrix& m) {
    return {m.ports, m.data.adjoint()};
}

inline ScatterMatrix matmul(const ScatterMatrix& a, const ScatterMatrix& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("matmul: dimension mismatch");
    return {a.ports, a.data * b.data};
}

/// Extracts the block over the named rows/columns, preserving port labels.
inline ScatterMatrix sub_block(const ScatterMatrix& m, const std::vector<PortLabel>& row_ports,
                               const std::vector<PortLabel>& col_ports) {
    if (row_ports.size() != col_ports.size())
        throw std::invalid_argument("sub_block: block must be square");
    Matrix out(row_ports.size(), col_ports.size());
    for (std::size_t i = 0; i < row_ports.size(); ++i)
        for (std::size_t j = 0; j < col_ports.size(); ++j)
            out(i, j) = m.data(m.index_of(row_ports[i]), m.index_of(col_ports[j]));
    return {row_ports, std::move(out)};
}

}  // namespace paramnet

/// Generic linear-network composition: pairwise port connection and
/// internal-wave elimination via one global linear solve.
#pragma once

#include "paramnet/wave.hpp"

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace paramnet {

/// Composition failed because the internal wave system is (numerically)
/// singular, e.g. a lossless self-loop exactly on resonance.
class SingularNetworkError : public std::runtime_error {
  public:
    explicit SingularNetworkError(const std::string& what) : std::runtime_error(what) {}
};

class NetworkError : public std::runtime_error {
  public:
    explicit NetworkError(const std::string& what) : std::runtime_error(what) {}
};

/// A set of elements, pairwise port connections, and the resulting external
/// (unconnected) ports, in declaration order.
struct Network {
    std::vector<ScatterMatrix> elements;
    std::vector<std::pair<PortLabel, PortLabel>> connections;

    void add_element(ScatterMatrix m) { elements.push_back(std::move(m)); }

    void connect(const PortLabel& a, const PortLabel& b) {
        if (a.channel != b.channel)
            throw NetworkError("connect: channel mismatch between " + a.str() + " (" +
                               to_string(a.channel) + ") and " + b.str() + " (" +
                               to_string(b.channel) + ")");
        connections.emplace_back(a, b);
    }

    /// Unconnected ports, in element declaration order.
    std::vector<PortLabel> externals() const {
        std::vector<PortLabel> ext;
        for (const auto& e : elements)
            for (const auto& p : e.ports)
                if (!is_connected(p)) ext.push_back(p);
        return ext;
    }

    bool is_connected(const PortLabel& p) const {
        for (const auto& [a, b] : connections)
            if (a == p || b == p) return true;
        return false;
    }
};

namespace detail {

struct PortIndexer {
    std::vector<PortLabel> all_ports;       // global order: element order, port order
    std::vector<Eigen::Index> element_of;   // element index per global port
    std::vector<Eigen::Index> local_of;     // local index within the element

    explicit PortIndexer(const Network& net) {
        for (std::size_t e = 0; e < net.elements.size(); ++e)
            for (std::size_t k = 0; k < net.elements[e].ports.size(); ++k) {
                all_ports.push_back(net.elements[e].ports[k]);
                element_of.push_back(static_cast<Eigen::Index>(e));
                local_of.push_back(static_cast<Eigen::Index>(k));
            }
    }

    Eigen::Index find(const PortLabel& p) const {
        for (std::size_t i = 0; i < all_ports.size(); ++i)
            if (all_ports[i] == p) return static_cast<Eigen::Index>(i);
        throw NetworkError("compose: dangling connection, unknown port " + p.str());
    }
};

}  // namespace detail

/// Reduces the network to a scattering matrix over its external ports.
///
/// Unknowns are the incoming waves at every connected port. Each connection
/// (p, q) imposes in_p = out_q and in_q = out_p, where the outgoing waves
/// follow from the element matrices. The resulting linear system is solved
/// once for all external excitations, which makes the reduction independent
/// of connection ordering and robust against resonant self-loops.
inline ScatterMatrix compose(const Network& net) {
    const detail::PortIndexer idx(net);
    const Eigen::Index n_all = static_cast<Eigen::Index>(idx.all_ports.size());

    // Map every global port to its slot among connected (internal) or
    // external ports; verify each port joins at most one connection.
    std::vector<Eigen::Index> peer(n_all, -1);
    for (const auto& [a, b] : net.connections) {
        const Eigen::Index ia = idx.find(a), ib = idx.find(b);
        if (ia == ib) throw NetworkError("compose: port connected to itself: " + a.str());
        if (peer[ia] != -1)
            throw NetworkError("compose: port in more than one connection: " + a.str());
        if (peer[ib] != -1)
            throw NetworkError("compose: port in more than one connection: " + b.str());
        peer[ia] = ib;
        peer[ib] = ia;
    }

    std::vector<Eigen::Index> internal_slot(n_all, -1), external_slot(n_all, -1);
    std::vector<PortLabel> externals;
    Eigen::Index n_int = 0, n_ext = 0;
    for (Eigen::Index i = 0; i < n_all; ++i) {
        if (peer[i] >= 0) {
            internal_slot[i] = n_int++;
        } else {
            external_slot[i] = n_ext++;
            externals.push_back(idx.all_ports[i]);
        }
    }

    // out_i = sum_j S_e(i,j) in_j, split into internal unknowns x and
    // external knowns a:  x_p - sum S(q,.) terms = S(q, ext) a.
    Matrix A = Matrix::Zero(n_int, n_int);
    Matrix B = Matrix::Zero(n_int, n_ext);
    for (Eigen::Index i = 0; i < n_all; ++i) {
        if (peer[i] < 0) continue;
        const Eigen::Index row = internal_slot[i];
        const Eigen::Index q = peer[i];  // in_i = out_q
        A(row, internal_slot[i]) += 1.0;
        const ScatterMatrix& el = net.elements[idx.element_of[q]];
        const Eigen::Index lq = idx.local_of[q];
        // Global index of element-local port j of the element owning q.
        Eigen::Index base = 0;
        for (Eigen::Index e = 0; e < idx.element_of[q]; ++e)
            base += net.elements[e].data.rows();
        for (Eigen::Index lj = 0; lj < el.data.cols(); ++lj) {
            const Eigen::Index gj = base + lj;
            const Complex s = el.data(lq, lj);
            if (internal_slot[gj] >= 0)
                A(row, internal_slot[gj]) -= s;
            else
                B(row, external_slot[gj]) += s;
        }
    }

    Matrix x(n_int, n_ext);
    if (n_int > 0) {
        const auto singular = [&net]() {
            std::string ports;
            for (const auto& [a, b] : net.connections)
                ports += (ports.empty() ? "" : ", ") + a.str() + "<->" + b.str();
            return SingularNetworkError(
                "compose: singular internal wave system (ill-posed loop) among connections: " +
                ports);
        };
        Eigen::PartialPivLU<Matrix> lu(A);
        const double rcond = lu.rcond();
        if (!(rcond > 1e-12)) throw singular();
        x = lu.solve(B);
        // The condition estimate can miss exactly singular structured
        // systems; a zero pivot then surfaces as non-finite amplitudes.
        if (!x.allFinite()) throw singular();
    }

    // Outgoing waves at external ports.
    Matrix S = Matrix::Zero(n_ext, n_ext);
    for (Eigen::Index i = 0; i < n_all; ++i) {
        if (external_slot[i] < 0) continue;
        const ScatterMatrix& el = net.elements[idx.element_of[i]];
        const Eigen::Index li = idx.local_of[i];
        Eigen::Index base = 0;
        for (Eigen::Index e = 0; e < idx.element_of[i]; ++e)
            base += net.elements[e].data.rows();
        for (Eigen::Index lj = 0; lj < el.data.cols(); ++lj) {
            const Eigen::Index gj = base + lj;
            const Complex s = el.data(li, lj);
            if (internal_slot[gj] >= 0)
                S.row(external_slot[i]) += s * x.row(internal_slot[gj]);
            else
                S(external_slot[i], external_slot[gj]) += s;
        }
    }
    return {std::move(externals), std::move(S)};
}

inline unsigned sweep_thread_cap() {
    if (const char* env = std::getenv("PARAMNET_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Composes the network built for each frequency. Frequencies are evaluated
/// in parallel up to the PARAMNET_THREADS cap; results keep input order, so
/// the output is independent of scheduling.
inline std::vector<ScatterMatrix> compose_sweep(
    const std::function<Network(double)>& net_builder, const std::vector<double>& omegas) {
    if (omegas.empty()) throw NetworkError("compose_sweep: empty frequency list");
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1]))
            throw NetworkError("compose_sweep: frequencies must be strictly increasing");

    std::vector<ScatterMatrix> out(omegas.size());
    std::vector<std::string> errors(omegas.size());
    const unsigned n_threads =
        std::min<unsigned>(sweep_thread_cap(), static_cast<unsigned>(omegas.size()));

    auto worker = [&](unsigned tid) {
        for (std::size_t i = tid; i < omegas.size(); i += n_threads) {
            try {
                out[i] = compose(net_builder(omegas[i]));
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < omegas.size(); ++i)
        if (!errors[i].empty())
            throw SingularNetworkError("compose_sweep at omega = " + std::to_string(omegas[i]) +
                                       " rad/s: " + errors[i]);
    return out;
}

}  // namespace paramnet

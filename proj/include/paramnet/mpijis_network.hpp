/// Assembly of the isolator as a generic network (two JPCs, 90-degree
/// hybrid, effective coupler, interconnect line), for composition by the
/// netgraph engine. Mirrors the device's signal-flow graph; composing it
/// must reproduce the closed forms in mpijis.hpp.
#pragma once

#include "paramnet/devices.hpp"
#include "paramnet/mpijis.hpp"
#include "paramnet/netgraph.hpp"

namespace paramnet::mpijis {

/// 2x2 flow-graph JPC block for a (possibly complex) conversion amplitude t:
/// reflection r = sqrt(1 - t^2) on the principal branch off port a, -r off
/// port b, transmission t e^{+i phi} (a to b) and t e^{-i phi} (b to a).
inline ScatterMatrix jpc_model_smatrix(Complex t, double pump_phase,
                                       const std::string& id = "jpc") {
    const Complex r = std::sqrt(1.0 - t * t);
    const Complex ph = std::polar(1.0, pump_phase);
    Matrix m(2, 2);
    m << r, t / ph,  //
        t * ph, -r;
    return {{{id, "a", Channel::f1}, {id, "b", Channel::f2}}, std::move(m)};
}

/// Builds the full isolator network with external ports
/// {hybrid.1, hybrid.2, coupler.3, coupler.4} in that order.
inline Network build_network(const MpijisParams& p, Complex t, const LineParams& line = {}) {
    Network net;
    net.add_element(hybrid90_smatrix("hybrid"));
    net.add_element(jpc_model_smatrix(t, p.phi1, "jpc1"));
    net.add_element(jpc_model_smatrix(t, p.phi2, "jpc2"));
    net.add_element(effective_coupler_smatrix(CouplerParams{p.alpha}, "coupler"));
    net.add_element(line_smatrix(line, "line", Channel::f2));

    net.connect({"hybrid", "1p", Channel::f1}, {"jpc1", "a", Channel::f1});
    net.connect({"hybrid", "2p", Channel::f1}, {"jpc2", "a", Channel::f1});
    net.connect({"jpc1", "b", Channel::f2}, {"coupler", "b1", Channel::f2});
    net.connect({"jpc2", "b", Channel::f2}, {"line", "p1", Channel::f2});
    net.connect({"line", "p2", Channel::f2}, {"coupler", "b2", Channel::f2});
    return net;
}

/// On-resonance network at the bias point of p.
inline Network build_network(const MpijisParams& p, const LineParams& line = {}) {
    return build_network(p, Complex{p.t, 0.0}, line);
}

/// Frequency-parameterized builder for compose_sweep: the JPC conversion
/// amplitude is re-evaluated from the bias at each signal frequency.
inline std::function<Network(double)> network_builder(const MpijisParams& p,
                                                      const JpcParams& jpc,
                                                      const LineParams& line = {}) {
    return [p, jpc, line](double omega) {
        return build_network(p, jpc_t_of_omega(jpc, omega), line);
    };
}

}  // namespace paramnet::mpijis

#include "bondsim/actuator/bellow_graph.hpp"

#include <stdexcept>

namespace bondsim::actuator {

namespace {

bg::ResistiveLaw orifice_law(double Cd, double D) {
    bg::ResistiveLaw law;
    law.flow_of_effort = [Cd, D](double dp, std::span<const double>) { return orifice_flow(dp, 0.0, Cd, D); };
    return law;
}

}  // namespace

BellowGraph bellow_graph(const PacketParams& p) {
    validate(p);
    BellowGraph b;
    bg::BondGraph& g = b.graph;

    b.supply = g.add_effort_source(0.0, "P1");
    const auto pneumatic = g.add_one_junction(3, "J1_air");
    const auto orifice = g.add_modulated_resistor(orifice_law(p.Cd, p.D), "orifice");

    const double c1 = volume_capacitance(p.A, p.k);
    if (p.c2_mode == C2Mode::Constant) {
        b.air = g.add_capacitor(total_capacitance(p, 0.0), "C_air");
    } else {
        b.air = g.add_modulated_capacitor(
            [p, c1](std::span<const double> s) { return c1 + gas_capacitance(p.A, p.L0 + s[0], p.rho, p.Rgas, p.T); },
            "C_air");
    }

    g.connect(b.supply, pneumatic);
    g.connect(pneumatic, orifice);

    bg::ElementId mechanical;
    if (!p.volume_coupled) {
        b.pressure_bond = g.connect(pneumatic, b.air);
        const auto force = g.add_modulated_effort_source(
            [A = p.A](std::span<const double> s) { return A * s[0]; }, "P2A");
        g.link_signal(bg::SignalSource::effort_of(b.pressure_bond), force);
        mechanical = g.add_one_junction(4, "J1_mech");
        g.connect(force, mechanical);
    } else {
        const auto chamber = g.add_zero_junction(3, "J0_air");
        const auto piston = g.add_transformer(1.0 / p.A, "piston");
        mechanical = g.add_one_junction(4, "J1_mech");
        g.connect(pneumatic, chamber);
        b.pressure_bond = g.connect(chamber, b.air);
        g.connect(bg::Port{chamber, 2}, bg::Port{piston, 0});
        g.connect(bg::Port{piston, 1}, bg::Port{mechanical, 0});
    }

    b.mass = g.add_inertia(p.m, "m");
    const auto damper = g.add_resistor(p.Rb, "Rb");
    b.spring = g.add_capacitor(1.0 / p.k, "k");
    g.connect(mechanical, b.mass);
    g.connect(mechanical, damper);
    g.connect(mechanical, b.spring);

    if (p.c2_mode == C2Mode::StateDependent) g.link_signal(bg::SignalSource::storage_of(b.spring), b.air);
    return b;
}

std::vector<double> to_graph_state(const PacketState& s, const PacketParams& p) {
    return {s.P2 * total_capacitance(p, s.x), s.x, p.m * s.v};
}

PacketState from_graph_state(std::span<const double> g, const PacketParams& p) {
    if (g.size() != 3) throw std::invalid_argument("bellow graph state has 3 entries");
    return PacketState{g[1], g[2] / p.m, g[0] / total_capacitance(p, g[1])};
}

PacketState packet_rates(std::span<const double> g, std::span<const double> rates, const PacketParams& p) {
    if (g.size() != 3 || rates.size() != 3) throw std::invalid_argument("bellow graph state has 3 entries");
    if (p.c2_mode != C2Mode::Constant) throw std::invalid_argument("packet_rates requires constant C2 mode");
    return PacketState{rates[1], rates[2] / p.m, rates[0] / total_capacitance(p, g[1])};
}

}  // namespace bondsim::actuator

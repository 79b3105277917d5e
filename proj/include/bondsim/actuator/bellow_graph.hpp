#pragma once

#include <span>
#include <vector>

#include "bondsim/actuator/packet.hpp"
#include "bondsim/bg/bond_graph.hpp"

namespace bondsim::actuator {

/// Bond graph of one elastic packet.
///
/// Cascade form (default), 7 bonds:
///   SE(P1) -1-> J1 -2-> MR(orifice)
///               J1 -3-> C(C1 + C2)           effort of bond 3 is P2
///   MSE(A * effort of bond 3) -4-> J1' -5-> I(m), -6-> R(Rb), -7-> C(1/k)
///
/// Volume-coupled form replaces the MSE by a J0 on the pneumatic side and a
/// TF(1/A) into the mechanical junction, so the piston flow A*v leaves the
/// pneumatic capacitance.
///
/// In state-dependent C2 mode the pneumatic C becomes an MC reading the spring
/// displacement x.
struct BellowGraph {
    bg::BondGraph graph;
    bg::ElementId supply;      // SE carrying P1, the only model input
    bg::ElementId air;         // pneumatic C/MC, state q = C * P2
    bg::ElementId mass;        // I, state p = m * v
    bg::ElementId spring;      // C(1/k), state x
    bg::BondId pressure_bond;  // effort = P2
};

BellowGraph bellow_graph(const PacketParams& params);

/// Packet state -> derived-model state (q, x, p).
std::vector<double> to_graph_state(const PacketState& state, const PacketParams& params);

/// Derived-model state (q, x, p) -> packet state.
PacketState from_graph_state(std::span<const double> graph_state, const PacketParams& params);

/// Converts derived-model rates (dq, dp, dx) at `graph_state` to packet rates.
/// Only valid in constant C2 mode, where dP2/dt = (dq/dt)/C.
PacketState packet_rates(std::span<const double> graph_state, std::span<const double> graph_rates,
                         const PacketParams& params);

}  // namespace bondsim::actuator

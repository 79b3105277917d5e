#include "bondsim/actuator/packet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bondsim/errors.hpp"

namespace bondsim::actuator {

std::string_view to_string(C2Mode mode) {
    return mode == C2Mode::Constant ? "constant" : "state_dependent";
}

void validate(const PacketParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    };
    positive(p.m, "m");
    positive(p.Rb, "Rb");
    positive(p.k, "k");
    positive(p.Cd, "Cd");
    positive(p.D, "D");
    positive(p.A, "A");
    positive(p.rho, "rho");
    positive(p.Rgas, "Rgas");
    positive(p.T, "T");
    positive(p.L0, "L0");
}

double orifice_flow(double P_up, double P_down, double Cd, double D) {
    const double dp = P_up - P_down;
    const double mag = std::abs(dp);
    const double q = mag >= kOrificeRegularization ? Cd * D * std::sqrt(mag)
                                                   : Cd * D * mag / std::sqrt(kOrificeRegularization);
    return dp < 0.0 ? -q : q;
}

double orifice_resistance(double P_up, double P_down, double Cd, double D) {
    return std::sqrt(std::abs(P_up - P_down)) / (Cd * D);
}

double volume_capacitance(double A, double k) { return A * A / k; }

double gas_capacitance(double A, double L, double rho, double Rgas, double T) {
    const double length = L < kMinGasColumn ? kMinGasColumn : L;
    return A * length / (rho * Rgas * T);
}

double total_capacitance(const PacketParams& p, double x) {
    const double L = p.c2_mode == C2Mode::Constant ? p.L0 : p.L0 + x;
    return volume_capacitance(p.A, p.k) + gas_capacitance(p.A, L, p.rho, p.Rgas, p.T);
}

PacketState packet_derivatives(const PacketState& s, double P1, const PacketParams& p) {
    if (!std::isfinite(s.x) || !std::isfinite(s.v) || !std::isfinite(s.P2) || !std::isfinite(P1))
        throw NonFiniteStateError("packet state or supply pressure is not finite");
    double inflow = orifice_flow(P1, s.P2, p.Cd, p.D);
    if (p.volume_coupled) inflow -= p.A * s.v;
    return PacketState{
        s.v,
        (s.P2 * p.A - p.Rb * s.v - p.k * s.x) / p.m,
        inflow / total_capacitance(p, s.x),
    };
}

double steady_state_extension(double P1, const PacketParams& p) { return P1 * p.A / p.k; }

double stored_energy(const PacketState& s, const PacketParams& p) {
    return 0.5 * p.m * s.v * s.v + 0.5 * p.k * s.x * s.x + 0.5 * total_capacitance(p, s.x) * s.P2 * s.P2;
}

}  // namespace bondsim::actuator

#pragma once

#include <string_view>

namespace bondsim::actuator {

/// Below this pressure difference the orifice law is linear through zero.
inline constexpr double kOrificeRegularization = 1e-6;  // Pa
/// Lower clamp on the gas-column length used by the air capacitance.
inline constexpr double kMinGasColumn = 1e-3;  // m

enum class C2Mode { Constant, StateDependent };

std::string_view to_string(C2Mode mode);

/// Physical constants of one elastic packet. Defaults are the nominal
/// experiment values; Rgas is the molar gas constant as tabulated.
struct PacketParams {
    double m = 0.015;          // kg
    double Rb = 0.4;           // kg/s
    double k = 350.0;          // N/m
    double Cd = 0.8;           // -
    double D = 0.008;          // m
    double A = 0.0096;         // m^2
    double rho = 1.225;        // kg/m^3
    double Rgas = 8.31451;     // J/(K mol)
    double T = 300.0;          // K
    double L0 = 0.3;           // m, gas-column length for the air capacitance
    C2Mode c2_mode = C2Mode::Constant;
    bool volume_coupled = false;  // subtract A*v from the net inflow

    bool operator==(const PacketParams&) const = default;
};

/// Throws std::invalid_argument unless every physical constant is positive and finite.
void validate(const PacketParams& p);

struct PacketState {
    double x = 0.0;   // m, extension
    double v = 0.0;   // m/s
    double P2 = 0.0;  // Pa, gauge pressure inside the packet

    bool operator==(const PacketState&) const = default;
};

/// Signed orifice flow Cd*D*sign(dP)*sqrt(|dP|), dP = P_up - P_down, linear
/// inside |dP| < kOrificeRegularization. Exactly odd in dP.
double orifice_flow(double P_up, double P_down, double Cd, double D);

/// Orifice resistance sqrt(|dP|)/(Cd*D).
double orifice_resistance(double P_up, double P_down, double Cd, double D);

/// Capacitance from packet volume change, A^2/k.
double volume_capacitance(double A, double k);

/// Capacitance from air compressibility, A*L/(rho*Rgas*T), L clamped to kMinGasColumn.
double gas_capacitance(double A, double L, double rho, double Rgas, double T);

/// Total pneumatic capacitance at extension x under the packet's C2 mode.
double total_capacitance(const PacketParams& p, double x);

/// dx/dt = v, dv/dt = (P2*A - Rb*v - k*x)/m, dP2/dt = Q/(C1 + C2) with Q the
/// orifice inflow (minus A*v when volume-coupled). Throws NonFiniteStateError.
PacketState packet_derivatives(const PacketState& state, double P1, const PacketParams& p);

/// Static extension under a constant supply pressure, P1*A/k.
double steady_state_extension(double P1, const PacketParams& p);

/// Stored energy 1/2 m v^2 + 1/2 k x^2 + 1/2 (C1 + C2) P2^2.
double stored_energy(const PacketState& state, const PacketParams& p);

}  // namespace bondsim::actuator

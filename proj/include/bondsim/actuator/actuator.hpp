#pragma once

#include "bondsim/actuator/packet.hpp"
#include "bondsim/bg/state_space.hpp"

namespace bondsim::actuator {

/// Two-sided (half-car) actuator: one packet per side joined through a
/// transformer of modulus mu.
struct ActuatorParams {
    PacketParams left;
    PacketParams right;
    double mu = 2.5;

    bool operator==(const ActuatorParams&) const = default;
};

void validate(const ActuatorParams& p);

struct BodyOutputs {
    double z = 0.0;      // m, heave
    double theta = 0.0;  // rad, bending rotation
    double tau = 0.0;    // N m, torque
};

/// z = (xL + xR)/2, theta = mu*(xL - xR), tau = (A_L*P2L - A_R*P2R)/mu.
BodyOutputs body_outputs(double xL, double xR, double P2L, double P2R, const ActuatorParams& p);

// Layout of the assembled model.
namespace layout {
inline constexpr std::size_t kXL = 0, kVL = 1, kP2L = 2, kXR = 3, kVR = 4, kP2R = 5;
inline constexpr std::size_t kP1L = 0, kP1R = 1;
inline constexpr std::size_t kZ = 0, kTheta = 1, kTau = 2;
}  // namespace layout

/// Single packet: states (x, v, P2), input P1, no observables.
bg::StateSpaceModel packet_model(const PacketParams& params);

/// Six states (x_L, v_L, P2_L, x_R, v_R, P2_R), inputs (P1_L, P1_R) and
/// observables (z, theta, tau). Each side evolves by packet_derivatives; the
/// sides do not load each other.
bg::StateSpaceModel assemble_actuator(const ActuatorParams& params);

}  // namespace bondsim::actuator

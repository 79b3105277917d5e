#include "bondsim/actuator/actuator.hpp"

#include <cmath>
#include <stdexcept>

namespace bondsim::actuator {

void validate(const ActuatorParams& p) {
    validate(p.left);
    validate(p.right);
    if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw std::invalid_argument("mu must be positive and finite");
}

BodyOutputs body_outputs(double xL, double xR, double P2L, double P2R, const ActuatorParams& p) {
    return BodyOutputs{
        0.5 * (xL + xR),
        p.mu * (xL - xR),
        (p.left.A * P2L - p.right.A * P2R) / p.mu,
    };
}

bg::StateSpaceModel packet_model(const PacketParams& params) {
    validate(params);
    auto derivatives = [params](double, std::span<const double> x, std::span<const double> u, std::span<double> out) {
        const PacketState d = packet_derivatives({x[0], x[1], x[2]}, u[0], params);
        out[0] = d.x;
        out[1] = d.v;
        out[2] = d.P2;
    };
    return bg::StateSpaceModel({"x", "v", "P2"}, {"P1"}, {}, std::move(derivatives), nullptr);
}

bg::StateSpaceModel assemble_actuator(const ActuatorParams& params) {
    validate(params);
    using namespace layout;

    auto derivatives = [params](double, std::span<const double> x, std::span<const double> u, std::span<double> out) {
        const PacketState dl = packet_derivatives({x[kXL], x[kVL], x[kP2L]}, u[kP1L], params.left);
        const PacketState dr = packet_derivatives({x[kXR], x[kVR], x[kP2R]}, u[kP1R], params.right);
        out[kXL] = dl.x;
        out[kVL] = dl.v;
        out[kP2L] = dl.P2;
        out[kXR] = dr.x;
        out[kVR] = dr.v;
        out[kP2R] = dr.P2;
    };
    auto observables = [params](double, std::span<const double> x, std::span<const double>, std::span<double> out) {
        const BodyOutputs b = body_outputs(x[kXL], x[kXR], x[kP2L], x[kP2R], params);
        out[kZ] = b.z;
        out[kTheta] = b.theta;
        out[kTau] = b.tau;
    };

    return bg::StateSpaceModel({"x_L", "v_L", "P2_L", "x_R", "v_R", "P2_R"}, {"P1_L", "P1_R"}, {"z", "theta", "tau"},
                               std::move(derivatives), std::move(observables));
}

}  // namespace bondsim::actuator

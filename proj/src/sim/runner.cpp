#include "bondsim/sim/runner.hpp"

#include <algorithm>

namespace bondsim::sim {

void TimeSeries::append(const std::array<double, kColumnCount>& row) {
    for (std::size_t i = 0; i < kColumnCount; ++i) columns_[i].push_back(row[i]);
}

void TimeSeries::reserve(std::size_t rows) {
    for (auto& c : columns_) c.reserve(rows);
}

TimeSeries run_scenario(const Scenario& s) {
    validate(s);
    const bg::StateSpaceModel model = actuator::assemble_actuator(s.actuator());
    const auto [phase_left, phase_right] = control::mode_phases(s.control.mode);
    const control::ControlParams c = s.control;
    const auto limit = s.pressure_limit;

    auto clamp = [limit](double p) { return limit ? std::clamp(p, -*limit, *limit) : p; };
    auto controller = [&, phase_left = phase_left, phase_right = phase_right](double t, std::span<const double> x) {
        using namespace actuator::layout;
        const control::Reference left = control::reference(c.amplitude, c.omega, phase_left, t);
        const control::Reference right = control::reference(c.amplitude, c.omega, phase_right, t);
        return std::vector<double>{
            clamp(control::pd_pressure(left.x, left.v, x[kXL], x[kVL], c.kp, c.kd)),
            clamp(control::pd_pressure(right.x, right.v, x[kXR], x[kVR], c.kp, c.kd)),
        };
    };

    const std::vector<double> rest(model.state_size(), 0.0);
    const solver::Trajectory traj = solver::integrate(model, rest, controller, s.solver);

    TimeSeries ts;
    ts.reserve(traj.rows());
    for (std::size_t r = 0; r < traj.rows(); ++r) {
        using namespace actuator::layout;
        const auto& x = traj.states[r];
        const auto& u = traj.inputs[r];
        const auto& y = traj.observables[r];
        ts.append({traj.times[r], x[kXL], x[kVL], x[kP2L], u[kP1L], x[kXR], x[kVR], x[kP2R], u[kP1R], y[kZ],
                   y[kTheta], y[kTau]});
    }
    return ts;
}

}  // namespace bondsim::sim

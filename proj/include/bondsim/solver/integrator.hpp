#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "bondsim/bg/state_space.hpp"
#include "bondsim/errors.hpp"

namespace bondsim::solver {

enum class Method { Euler, Rk4 };

std::string_view to_string(Method method);

struct SolverOptions {
    Method method = Method::Rk4;
    double dt = 1e-4;          // s
    double t_end = 20.0;       // s
    std::size_t record_stride = 100;

    bool operator==(const SolverOptions&) const = default;
};

/// Throws std::invalid_argument unless dt > 0, t_end >= 0 and record_stride >= 1.
void validate(const SolverOptions& options);

/// Recorded trajectory. Rows are instants k * dt * record_stride for k = 0..n,
/// plus the exact final state, which may fall between recorded instants.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<std::vector<double>> inputs;       // held inputs at each recorded instant
    std::vector<std::vector<double>> observables;  // evaluated with the recorded inputs

    double final_time = 0.0;
    std::vector<double> final_state;

    std::size_t rows() const noexcept { return times.size(); }
};

/// Called once per step, before stepping. Sees the time and current state and
/// returns inputs that are held over the whole step.
using InputFn = std::function<std::vector<double>(double t, std::span<const double> state)>;

/// One explicit Euler or classical RK4 step with zero-order-held inputs.
/// Throws NonFiniteStateError if the result has a NaN or infinity.
std::vector<double> step(const bg::StateSpaceModel& model, double t, std::span<const double> state,
                         std::span<const double> inputs, double dt, Method method);

/// Fixed-step integration from t = 0 to options.t_end. When t_end is not a
/// multiple of dt a final partial step lands exactly on t_end. Throws
/// NonFiniteStateError tagged with the time of the failing step.
Trajectory integrate(const bg::StateSpaceModel& model, std::span<const double> initial_state, const InputFn& inputs,
                     const SolverOptions& options);

/// Input function that always returns the model's nominal inputs.
InputFn constant_inputs(std::vector<double> values);

}  // namespace bondsim::solver

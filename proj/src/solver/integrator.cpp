#include "bondsim/solver/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bondsim::solver {

std::string_view to_string(Method method) {
    switch (method) {
        case Method::Euler: return "euler";
        case Method::Rk4: return "rk4";
    }
    return "?";
}

void validate(const SolverOptions& options) {
    if (!(options.dt > 0.0) || !std::isfinite(options.dt))
        throw std::invalid_argument("dt must be positive and finite");
    if (!(options.t_end >= 0.0) || !std::isfinite(options.t_end))
        throw std::invalid_argument("t_end must be non-negative and finite");
    if (options.record_stride < 1) throw std::invalid_argument("record_stride must be at least 1");
}

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Scratch buffers reused across steps of one integration.
struct Workspace {
    explicit Workspace(std::size_t n) : k1(n), k2(n), k3(n), k4(n), tmp(n) {}
    std::vector<double> k1, k2, k3, k4, tmp;
};

void advance(const bg::StateSpaceModel& model, double t, std::span<const double> x, std::span<const double> u,
             double dt, Method method, Workspace& w, std::span<double> out) {
    const std::size_t n = x.size();
    model.derivatives(t, x, u, w.k1);
    if (method == Method::Euler) {
        for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt * w.k1[i];
        return;
    }
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + half * w.k1[i];
    model.derivatives(t + half, w.tmp, u, w.k2);
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + half * w.k2[i];
    model.derivatives(t + half, w.tmp, u, w.k3);
    for (std::size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + dt * w.k3[i];
    model.derivatives(t + dt, w.tmp, u, w.k4);
    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x[i] + sixth * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

std::string describe(double t) { return "non-finite state after step at t = " + std::to_string(t) + " s"; }

// Model evaluations may reject non-finite values themselves; tag those with the step time.
void advance_checked(const bg::StateSpaceModel& model, double t, std::span<const double> x,
                     std::span<const double> u, double dt, Method method, Workspace& w, std::span<double> out) {
    try {
        advance(model, t, x, u, dt, method, w, out);
    } catch (const NonFiniteStateError& e) {
        if (e.time()) throw;
        throw NonFiniteStateError(describe(t) + ": " + e.what(), t);
    }
    if (!all_finite(out)) throw NonFiniteStateError(describe(t), t);
}

}  // namespace

std::vector<double> step(const bg::StateSpaceModel& model, double t, std::span<const double> state,
                         std::span<const double> inputs, double dt, Method method) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (state.size() != model.state_size()) throw std::invalid_argument("state dimension does not match model");
    Workspace w(state.size());
    std::vector<double> out(state.size());
    advance_checked(model, t, state, inputs, dt, method, w, out);
    return out;
}

Trajectory integrate(const bg::StateSpaceModel& model, std::span<const double> initial_state, const InputFn& inputs,
                     const SolverOptions& options) {
    validate(options);
    if (initial_state.size() != model.state_size())
        throw std::invalid_argument("initial state dimension does not match model");
    if (!all_finite(initial_state)) throw NonFiniteStateError("initial state is not finite", 0.0);

    const double dt = options.dt;
    const double ratio = options.t_end / dt;
    // Treat t_end within rounding of a whole number of steps as exact.
    const double nearest = std::round(ratio);
    const bool whole = std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest);
    const auto full_steps = static_cast<std::size_t>(whole ? nearest : std::floor(ratio));
    const double remainder = whole ? 0.0 : options.t_end - static_cast<double>(full_steps) * dt;

    Trajectory traj;
    const std::size_t expected_rows = full_steps / options.record_stride + 1;
    traj.times.reserve(expected_rows);
    traj.states.reserve(expected_rows);
    traj.inputs.reserve(expected_rows);
    traj.observables.reserve(expected_rows);

    std::vector<double> x(initial_state.begin(), initial_state.end());
    std::vector<double> next(x.size());
    Workspace w(x.size());

    auto held_inputs = [&](double t) {
        std::vector<double> u = inputs(t, x);
        if (u.size() != model.input_size())
            throw std::invalid_argument("input function returned " + std::to_string(u.size()) +
                                        " values, model expects " + std::to_string(model.input_size()));
        return u;
    };
    auto record = [&](double t, const std::vector<double>& u) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        traj.inputs.push_back(u);
        traj.observables.push_back(model.observables(t, x, u));
    };

    for (std::size_t k = 0; k < full_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const std::vector<double> u = held_inputs(t);
        if (k % options.record_stride == 0) record(t, u);
        advance_checked(model, t, x, u, dt, options.method, w, next);
        x.swap(next);
    }

    const double t_full = static_cast<double>(full_steps) * dt;
    const std::vector<double> u_last = held_inputs(t_full);
    if (full_steps % options.record_stride == 0) record(t_full, u_last);

    double t_final = t_full;
    if (remainder > 0.0) {
        const std::vector<double>& u = u_last;
        advance_checked(model, t_full, x, u, remainder, options.method, w, next);
        x.swap(next);
        t_final = options.t_end;
    }
    traj.final_time = t_final;
    traj.final_state = x;
    return traj;
}

InputFn constant_inputs(std::vector<double> values) {
    return [values = std::move(values)](double, std::span<const double>) { return values; };
}

}  // namespace bondsim::solver

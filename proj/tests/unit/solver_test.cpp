#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bondsim/solver/integrator.hpp"

using namespace bondsim;
using bondsim::bg::StateSpaceModel;
using solver::Method;
using solver::SolverOptions;

namespace {

using Rhs = std::function<void(double, std::span<const double>, std::span<const double>, std::span<double>)>;

StateSpaceModel make_model(std::size_t n, Rhs rhs, std::size_t inputs = 0) {
    std::vector<std::string> states, in;
    for (std::size_t i = 0; i < n; ++i) states.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < inputs; ++i) in.push_back("u" + std::to_string(i));
    return StateSpaceModel(states, in, {}, std::move(rhs), nullptr);
}

StateSpaceModel decay() {
    return make_model(1, [](double, auto x, auto, auto out) { out[0] = -x[0]; });
}

// x'' + 2*zeta*x' + x = 0 as (x, v); zeta = 0 gives the unit harmonic oscillator.
StateSpaceModel oscillator(double zeta) {
    return make_model(2, [zeta](double, auto x, auto, auto out) {
        out[0] = x[1];
        out[1] = -x[0] - 2.0 * zeta * x[1];
    });
}

SolverOptions options(Method method, double dt, double t_end, std::size_t stride = 1) {
    SolverOptions o;
    o.method = method;
    o.dt = dt;
    o.t_end = t_end;
    o.record_stride = stride;
    return o;
}

const solver::InputFn kNoInputs = solver::constant_inputs({});

// Global error at t = 10 of the unit oscillator from (1, 0); closed form (cos t, -sin t).
double oscillator_error(Method method, double dt) {
    const std::vector<double> x0{1.0, 0.0};
    const auto traj = solver::integrate(oscillator(0.0), x0, kNoInputs, options(method, dt, 10.0, 1000000));
    const double t = traj.final_time;
    return std::hypot(traj.final_state[0] - std::cos(t), traj.final_state[1] + std::sin(t));
}

}  // namespace

TEST(Step, Rk4OnLinearDecay) {
    // 1 - h + h^2/2 - h^3/6 + h^4/24 at h = 0.1
    const std::vector<double> x{1.0};
    EXPECT_NEAR(solver::step(decay(), 0.0, x, {}, 0.1, Method::Rk4)[0], 0.9048375, 1e-15);
}

TEST(Step, EulerOnLinearDecay) {
    const std::vector<double> x{1.0};
    EXPECT_NEAR(solver::step(decay(), 0.0, x, {}, 0.1, Method::Euler)[0], 0.9, 1e-15);
}

TEST(Step, ZeroDerivativeLeavesStateUnchanged) {
    const auto still = make_model(3, [](double, auto, auto, auto out) { std::fill(out.begin(), out.end(), 0.0); });
    const std::vector<double> x{1.5, -2.0, 1e9};
    for (Method m : {Method::Euler, Method::Rk4}) {
        for (double dt : {1e-6, 0.3, 12.0}) EXPECT_EQ(solver::step(still, 0.0, x, {}, dt, m), x);
    }
}

TEST(Step, NonFiniteResultThrows) {
    const auto bad = make_model(1, [](double, auto x, auto, auto out) { out[0] = 1.0 / x[0]; });
    const std::vector<double> x{0.0};
    EXPECT_THROW(solver::step(bad, 0.0, x, {}, 0.1, Method::Euler), NonFiniteStateError);
}

TEST(Step, RejectsBadArguments) {
    const std::vector<double> x{1.0}, two{1.0, 2.0};
    EXPECT_THROW(solver::step(decay(), 0.0, x, {}, 0.0, Method::Rk4), std::invalid_argument);
    EXPECT_THROW(solver::step(decay(), 0.0, two, {}, 0.1, Method::Rk4), std::invalid_argument);
}

TEST(Integrate, DecayReachesInverseE) {
    const std::vector<double> x0{1.0};
    const auto traj = solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.001, 1.0));
    EXPECT_DOUBLE_EQ(traj.final_time, 1.0);
    EXPECT_NEAR(traj.final_state[0], std::exp(-1.0), 1e-9);
    EXPECT_NEAR(traj.final_state[0], 0.3678794412, 1e-9);
    EXPECT_EQ(traj.states.back(), traj.final_state);
}

TEST(Integrate, ZeroDurationGivesInitialRow) {
    const std::vector<double> x0{0.25};
    const auto traj = solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.01, 0.0));
    ASSERT_EQ(traj.rows(), 1u);
    EXPECT_EQ(traj.times[0], 0.0);
    EXPECT_EQ(traj.states[0], x0);
    EXPECT_EQ(traj.final_state, x0);
}

TEST(Integrate, RecordedRowsFollowStride) {
    const std::vector<double> x0{1.0};
    const auto traj = solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.01, 1.0, 7));
    ASSERT_EQ(traj.rows(), 100u / 7u + 1u);
    for (std::size_t r = 0; r < traj.rows(); ++r) EXPECT_DOUBLE_EQ(traj.times[r], static_cast<double>(7 * r) * 0.01);
    EXPECT_DOUBLE_EQ(traj.final_time, 1.0);
}

TEST(Integrate, PartialFinalStepLandsOnEndTime) {
    const std::vector<double> x0{1.0};
    const auto traj = solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.1, 1.05));
    EXPECT_EQ(traj.rows(), 11u);
    EXPECT_DOUBLE_EQ(traj.final_time, 1.05);
    EXPECT_NEAR(traj.final_state[0], std::exp(-1.05), 1e-6);
}

TEST(Integrate, InputsAreHeldOverEachStep) {
    // x' = u with u = t sampled at step start: RK4 then integrates a staircase,
    // x(1) = dt^2 * N(N-1)/2.
    const auto ramp = make_model(1, [](double, auto, auto u, auto out) { out[0] = u[0]; }, 1);
    int calls = 0;
    const solver::InputFn sampled = [&calls](double t, std::span<const double>) {
        ++calls;
        return std::vector<double>{t};
    };
    const std::vector<double> x0{0.0};
    const auto traj = solver::integrate(ramp, x0, sampled, options(Method::Rk4, 0.01, 1.0, 10));
    EXPECT_NEAR(traj.final_state[0], 0.01 * 0.01 * 100.0 * 99.0 / 2.0, 1e-13);
    EXPECT_EQ(calls, 101);  // 100 steps plus the final recorded instant
    EXPECT_DOUBLE_EQ(traj.inputs[3][0], 0.3);
}

TEST(Integrate, Rk4IsExactForCubicForcing) {
    // x' = 1 + 2t + 3t^2 - 4t^3 -> x(T) = T + T^2 + T^3 - T^4
    const auto cubic = make_model(1, [](double t, auto, auto, auto out) {
        out[0] = 1.0 + 2.0 * t + 3.0 * t * t - 4.0 * t * t * t;
    });
    const std::vector<double> x0{0.0};
    for (double dt : {0.5, 0.1, 0.25}) {
        const auto traj = solver::integrate(cubic, x0, kNoInputs, options(Method::Rk4, dt, 2.0));
        const double T = 2.0;
        EXPECT_NEAR(traj.final_state[0], T + T * T + T * T * T - T * T * T * T, 1e-12) << "dt=" << dt;
    }
}

TEST(Integrate, ConvergenceOrders) {
    const double rk4_ratio = oscillator_error(Method::Rk4, 0.01) / oscillator_error(Method::Rk4, 0.005);
    const double euler_ratio = oscillator_error(Method::Euler, 0.01) / oscillator_error(Method::Euler, 0.005);
    EXPECT_NEAR(rk4_ratio, 16.0, 0.2 * 16.0);
    EXPECT_NEAR(euler_ratio, 2.0, 0.2 * 2.0);
    EXPECT_NEAR(std::log2(rk4_ratio), 4.0, 0.2);
    EXPECT_NEAR(std::log2(euler_ratio), 1.0, 0.2);
}

TEST(Integrate, DampedOscillatorEnergyNeverGrows) {
    const std::vector<double> x0{1.0, 0.0};
    // omega_n = 1, so dt = 0.01 is far below the 2/omega_n limit.
    const auto traj = solver::integrate(oscillator(0.3), x0, kNoInputs, options(Method::Rk4, 0.01, 20.0, 5));
    double previous = 0.5 * (x0[0] * x0[0] + x0[1] * x0[1]);
    for (const auto& s : traj.states) {
        const double e = 0.5 * (s[0] * s[0] + s[1] * s[1]);
        EXPECT_LE(e, previous);
        previous = e;
    }
}

TEST(Integrate, BitIdenticalReruns) {
    const std::vector<double> x0{0.3, -0.7};
    const auto a = solver::integrate(oscillator(0.1), x0, kNoInputs, options(Method::Rk4, 0.003, 5.0, 3));
    const auto b = solver::integrate(oscillator(0.1), x0, kNoInputs, options(Method::Rk4, 0.003, 5.0, 3));
    EXPECT_EQ(a.times, b.times);
    EXPECT_EQ(a.states, b.states);
    EXPECT_EQ(a.final_state, b.final_state);
}

TEST(Integrate, BlowUpReportsTime) {
    // x' = x^2 from x = 1 escapes at t = 1.
    const auto blowup = make_model(1, [](double, auto x, auto, auto out) { out[0] = x[0] * x[0]; });
    const std::vector<double> x0{1.0};
    try {
        solver::integrate(blowup, x0, kNoInputs, options(Method::Euler, 0.01, 5.0));
        FAIL() << "expected NonFiniteStateError";
    } catch (const NonFiniteStateError& e) {
        ASSERT_TRUE(e.time().has_value());
        EXPECT_GT(*e.time(), 0.9);
        EXPECT_LT(*e.time(), 5.0);
    }
}

TEST(Integrate, ModelRejectionGetsStepTime) {
    const auto picky = make_model(1, [](double t, auto, auto, auto out) {
        if (t >= 0.25) throw NonFiniteStateError("refused");
        out[0] = 1.0;
    });
    try {
        solver::integrate(picky, std::vector<double>{0.0}, solver::constant_inputs({}), options(Method::Euler, 0.1, 1.0));
        FAIL();
    } catch (const NonFiniteStateError& e) {
        ASSERT_TRUE(e.time());
        EXPECT_NEAR(*e.time(), 0.3, 1e-12);
        EXPECT_NE(std::string(e.what()).find("refused"), std::string::npos);
    }
}

TEST(Integrate, RejectsInvalidOptionsAndState) {
    const std::vector<double> x0{1.0}, nan{std::nan("")};
    EXPECT_THROW(solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, -0.1, 1.0)), std::invalid_argument);
    EXPECT_THROW(solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.1, -1.0)), std::invalid_argument);
    EXPECT_THROW(solver::integrate(decay(), x0, kNoInputs, options(Method::Rk4, 0.1, 1.0, 0)), std::invalid_argument);
    EXPECT_THROW(solver::integrate(decay(), nan, kNoInputs, options(Method::Rk4, 0.1, 1.0)), NonFiniteStateError);
}

#pragma once

#include <numbers>
#include <optional>
#include <string_view>
#include <utility>

namespace bondsim::control {

enum class Mode { Bending, Extension };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct ControlParams {
    double kp = 40.0;         // Pa/m
    double kd = 10.0;         // Pa s/m
    double amplitude = 0.3;   // m
    double omega = 1.0;       // rad/s
    Mode mode = Mode::Bending;

    bool operator==(const ControlParams&) const = default;
};

/// Throws std::invalid_argument unless kp, kd, amplitude >= 0 and omega > 0.
void validate(const ControlParams& p);

struct Reference {
    double x = 0.0;  // m
    double v = 0.0;  // m/s
};

/// x = a*sin(omega*t + phase), v = a*omega*cos(omega*t + phase).
Reference reference(double amplitude, double omega, double phase, double t);

/// Reference phases (left, right): opposite sides for bending, in phase for extension.
std::pair<double, double> mode_phases(Mode mode);

/// kp*(xref - x) + kd*(vref - v). Negative values remove air.
double pd_pressure(double xref, double vref, double x, double v, double kp, double kd);

}  // namespace bondsim::control

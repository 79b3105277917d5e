#include "bondsim/control/pd.hpp"

#include <cmath>
#include <stdexcept>

namespace bondsim::control {

std::string_view to_string(Mode mode) { return mode == Mode::Bending ? "bending" : "extension"; }

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "bending") return Mode::Bending;
    if (text == "extension") return Mode::Extension;
    return std::nullopt;
}

void validate(const ControlParams& p) {
    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    check(p.kp >= 0.0 && std::isfinite(p.kp), "kp must be non-negative and finite");
    check(p.kd >= 0.0 && std::isfinite(p.kd), "kd must be non-negative and finite");
    check(p.amplitude >= 0.0 && std::isfinite(p.amplitude), "amplitude must be non-negative and finite");
    check(p.omega > 0.0 && std::isfinite(p.omega), "omega must be positive and finite");
}

Reference reference(double amplitude, double omega, double phase, double t) {
    const double angle = omega * t + phase;
    return {amplitude * std::sin(angle), amplitude * omega * std::cos(angle)};
}

std::pair<double, double> mode_phases(Mode mode) {
    return mode == Mode::Bending ? std::pair{0.0, std::numbers::pi} : std::pair{0.0, 0.0};
}

double pd_pressure(double xref, double vref, double x, double v, double kp, double kd) {
    return kp * (xref - x) + kd * (vref - v);
}

}  // namespace bondsim::control

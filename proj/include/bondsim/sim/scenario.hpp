#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bondsim/actuator/actuator.hpp"
#include "bondsim/control/pd.hpp"
#include "bondsim/solver/integrator.hpp"

namespace bondsim::sim {

/// Full description of one closed-loop run. Both sides share `packet`.
struct Scenario {
    actuator::PacketParams packet;
    double mu = 2.5;
    control::ControlParams control;
    solver::SolverOptions solver;
    std::optional<double> pressure_limit;  // Pa, symmetric clamp on P1
    std::string csv_path = "simulation.csv";
    std::string plot_dir;                  // empty: no plots

    actuator::ActuatorParams actuator() const { return {packet, packet, mu}; }

    bool operator==(const Scenario&) const = default;
};

/// Throws ConfigError(Validation) when any component invariant is violated.
void validate(const Scenario& s);

class ConfigError : public std::runtime_error {
public:
    enum class Kind { Parse, Validation, UnknownKey, Io };

    ConfigError(Kind kind, const std::string& what, std::size_t line = 0, std::string key = {});

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }  // 1-based, 0 when not line-specific
    const std::string& key() const noexcept { return key_; }

private:
    Kind kind_;
    std::size_t line_;
    std::string key_;
};

/// Flat `key = value` text. `#` and `;` start comments; strings may be quoted.
/// Unspecified keys keep their defaults; unknown and duplicate keys are errors.
Scenario parse_config(std::string_view text);
Scenario load_config(const std::filesystem::path& path);

/// Writes every key so that parse_config(to_config_string(s)) == s.
std::string to_config_string(const Scenario& s);

}  // namespace bondsim::sim

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace bondsim {

/// Raised when a state or derivative evaluation produces NaN or infinity.
/// Carries the simulation time when the failure happened inside an integration.
class NonFiniteStateError : public std::runtime_error {
public:
    explicit NonFiniteStateError(const std::string& what, std::optional<double> time = std::nullopt)
        : std::runtime_error(what), time_(time) {}

    std::optional<double> time() const noexcept { return time_; }

private:
    std::optional<double> time_;
};

}  // namespace bondsim

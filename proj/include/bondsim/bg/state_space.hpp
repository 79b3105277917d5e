#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bondsim::bg {

/// Executable first-order model dx/dt = f(t, x, u) with observables y = g(t, x, u).
/// Immutable after construction; both evaluators are pure and reentrant.
class StateSpaceModel {
public:
    using DerivativeFn = std::function<void(double t, std::span<const double> state,
                                            std::span<const double> inputs, std::span<double> out)>;
    using ObservableFn = DerivativeFn;

    StateSpaceModel(std::vector<std::string> state_labels, std::vector<std::string> input_labels,
                    std::vector<std::string> observable_labels, DerivativeFn derivatives,
                    ObservableFn observables, std::vector<double> nominal_inputs = {});

    std::size_t state_size() const noexcept { return state_labels_.size(); }
    std::size_t input_size() const noexcept { return input_labels_.size(); }
    std::size_t observable_size() const noexcept { return observable_labels_.size(); }

    const std::vector<std::string>& state_labels() const noexcept { return state_labels_; }
    const std::vector<std::string>& input_labels() const noexcept { return input_labels_; }
    const std::vector<std::string>& observable_labels() const noexcept { return observable_labels_; }

    /// Input values the model was built with (source constants); zeros otherwise.
    const std::vector<double>& nominal_inputs() const noexcept { return nominal_inputs_; }

    std::optional<std::size_t> state_index(std::string_view label) const;
    std::optional<std::size_t> observable_index(std::string_view label) const;

    void derivatives(double t, std::span<const double> state, std::span<const double> inputs,
                     std::span<double> out) const;
    std::vector<double> derivatives(double t, std::span<const double> state,
                                    std::span<const double> inputs) const;

    void observables(double t, std::span<const double> state, std::span<const double> inputs,
                     std::span<double> out) const;
    std::vector<double> observables(double t, std::span<const double> state,
                                    std::span<const double> inputs) const;

private:
    void check_sizes(std::span<const double> state, std::span<const double> inputs) const;

    std::vector<std::string> state_labels_;
    std::vector<std::string> input_labels_;
    std::vector<std::string> observable_labels_;
    DerivativeFn derivatives_;
    ObservableFn observables_;
    std::vector<double> nominal_inputs_;
};

}  // namespace bondsim::bg

#include "bondsim/bg/state_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace bondsim::bg {

StateSpaceModel::StateSpaceModel(std::vector<std::string> state_labels, std::vector<std::string> input_labels,
                                 std::vector<std::string> observable_labels, DerivativeFn derivatives,
                                 ObservableFn observables, std::vector<double> nominal_inputs)
    : state_labels_(std::move(state_labels)),
      input_labels_(std::move(input_labels)),
      observable_labels_(std::move(observable_labels)),
      derivatives_(std::move(derivatives)),
      observables_(std::move(observables)),
      nominal_inputs_(std::move(nominal_inputs)) {
    if (!derivatives_) throw std::invalid_argument("StateSpaceModel: derivative evaluator is required");
    if (nominal_inputs_.empty()) nominal_inputs_.assign(input_labels_.size(), 0.0);
    if (nominal_inputs_.size() != input_labels_.size())
        throw std::invalid_argument("StateSpaceModel: nominal inputs do not match input labels");
    if (!observables_ && !observable_labels_.empty())
        throw std::invalid_argument("StateSpaceModel: observable labels given without an evaluator");
}

namespace {

std::optional<std::size_t> find_label(const std::vector<std::string>& labels, std::string_view label) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

std::optional<std::size_t> StateSpaceModel::state_index(std::string_view label) const {
    return find_label(state_labels_, label);
}

std::optional<std::size_t> StateSpaceModel::observable_index(std::string_view label) const {
    return find_label(observable_labels_, label);
}

void StateSpaceModel::check_sizes(std::span<const double> state, std::span<const double> inputs) const {
    if (state.size() != state_size())
        throw std::invalid_argument("state has " + std::to_string(state.size()) + " entries, model expects " +
                                    std::to_string(state_size()));
    if (inputs.size() != input_size())
        throw std::invalid_argument("inputs have " + std::to_string(inputs.size()) + " entries, model expects " +
                                    std::to_string(input_size()));
}

void StateSpaceModel::derivatives(double t, std::span<const double> state, std::span<const double> inputs,
                                  std::span<double> out) const {
    check_sizes(state, inputs);
    if (out.size() != state_size()) throw std::invalid_argument("derivative buffer has the wrong size");
    derivatives_(t, state, inputs, out);
}

std::vector<double> StateSpaceModel::derivatives(double t, std::span<const double> state,
                                                 std::span<const double> inputs) const {
    std::vector<double> out(state_size());
    derivatives(t, state, inputs, out);
    return out;
}

void StateSpaceModel::observables(double t, std::span<const double> state, std::span<const double> inputs,
                                  std::span<double> out) const {
    check_sizes(state, inputs);
    if (out.size() != observable_size()) throw std::invalid_argument("observable buffer has the wrong size");
    if (observables_) observables_(t, state, inputs, out);
}

std::vector<double> StateSpaceModel::observables(double t, std::span<const double> state,
                                                 std::span<const double> inputs) const {
    std::vector<double> out(observable_size());
    observables(t, state, inputs, out);
    return out;
}

}  // namespace bondsim::bg

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bondsim/sim/scenario.hpp"

namespace bondsim::sim {

enum class Column : std::size_t { t, x_L, v_L, P2_L, P1_L, x_R, v_R, P2_R, P1_R, z, theta, tau };

inline constexpr std::size_t kColumnCount = 12;
inline constexpr std::array<std::string_view, kColumnCount> kColumnNames{
    "t", "x_L", "v_L", "P2_L", "P1_L", "x_R", "v_R", "P2_R", "P1_R", "z", "theta", "tau"};

/// Columnar record of a closed-loop run, SI units throughout.
class TimeSeries {
public:
    std::size_t rows() const noexcept { return columns_[0].size(); }

    const std::vector<double>& column(Column c) const { return columns_[static_cast<std::size_t>(c)]; }
    const std::vector<double>& column(std::size_t i) const { return columns_.at(i); }
    double at(std::size_t row, Column c) const { return column(c).at(row); }

    void append(const std::array<double, kColumnCount>& row);
    void reserve(std::size_t rows);

private:
    std::array<std::vector<double>, kColumnCount> columns_;
};

/// Builds the two-sided actuator, closes each side with the PD pressure law
/// for the scenario's mode and integrates from rest. P1 is held over each step.
/// Throws NonFiniteStateError with the failing time.
TimeSeries run_scenario(const Scenario& s);

/// Header `t,x_L,...,tau`, shortest round-trip decimals, LF endings.
std::string format_csv(const TimeSeries& ts);
/// Throws std::runtime_error when the file cannot be written.
void write_csv(const TimeSeries& ts, const std::filesystem::path& path);

/// Writes extension.svg, rotation.svg, displacement.svg, torque.svg and
/// pressure.svg into `dir` (created if needed). When `reference` is given the
/// extension chart also shows both sides' reference trajectories.
void render_plots(const TimeSeries& ts, const std::filesystem::path& dir,
                  const std::optional<control::ControlParams>& reference = std::nullopt);

}  // namespace bondsim::sim

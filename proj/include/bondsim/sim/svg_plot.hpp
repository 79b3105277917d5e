#pragma once

#include <string>
#include <vector>

namespace bondsim::sim::svg {

struct Series {
    std::string name;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Static line chart with axes, ticks and a legend. Series with no points are
/// listed in the legend but draw no polyline.
std::string render(const Chart& chart);

}  // namespace bondsim::sim::svg

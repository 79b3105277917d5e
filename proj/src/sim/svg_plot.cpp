#include "bondsim/sim/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "bondsim/sim/runner.hpp"

namespace bondsim::sim {

namespace svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    // Ensures a non-empty span so flat traces render as a centred line.
    Range padded() const {
        if (lo > hi) return {0.0, 1.0};
        if (hi - lo <= 1e-12 * std::max(std::abs(lo), std::abs(hi)) || hi == lo) {
            const double pad = lo == 0.0 ? 1.0 : 0.1 * std::abs(lo);
            return {lo - pad, hi + pad};
        }
        return *this;
    }
};

double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
    return step * mag;
}

std::vector<double> ticks(const Range& r) {
    const double step = nice_step(r.hi - r.lo);
    std::vector<double> out;
    for (double v = std::ceil(r.lo / step) * step; v <= r.hi + 1e-9 * step; v += step) {
        out.push_back(std::abs(v) < 1e-9 * step ? 0.0 : v);
    }
    return out;
}

}  // namespace

std::string render(const Chart& chart) {
    Range xr, yr;
    for (const Series& s : chart.series) {
        for (double v : s.x) xr.include(v);
        for (double v : s.y) yr.include(v);
    }
    xr = xr.padded();
    yr = yr.padded();

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) +
           "\" viewBox=\"0 0 " + fixed(kWidth) + " " + fixed(kHeight) + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           escape(chart.title) + "</text>\n";

    // Grid and ticks.
    out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    const auto xt = ticks(xr);
    const auto yt = ticks(yr);
    for (double v : xt)
        out += "<line x1=\"" + fixed(px(v)) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(px(v)) + "\" y2=\"" +
               fixed(kTop + plot_h) + "\"/>\n";
    for (double v : yt)
        out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(v)) + "\" x2=\"" + fixed(kLeft + plot_w) +
               "\" y2=\"" + fixed(py(v)) + "\"/>\n";
    out += "</g>\n";
    out += "<g font-size=\"11\" fill=\"#333333\">\n";
    for (double v : xt)
        out += "<text x=\"" + fixed(px(v)) + "\" y=\"" + fixed(kTop + plot_h + 16) + "\" text-anchor=\"middle\">" +
               tick_label(v) + "</text>\n";
    for (double v : yt)
        out += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(v) + 4) + "\" text-anchor=\"end\">" +
               tick_label(v) + "</text>\n";
    out += "</g>\n";

    // Axes.
    out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) + "\" height=\"" +
           fixed(plot_h) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 16) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + escape(chart.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + fixed(kTop + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"13\" " +
           "transform=\"rotate(-90 20 " + fixed(kTop + plot_h / 2) + ")\">" + escape(chart.y_label) + "</text>\n";

    // Data.
    for (const Series& s : chart.series) {
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (n == 0) continue;
        out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
        if (s.dashed) out += " stroke-dasharray=\"6 4\"";
        out += " points=\"";
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (i) out += ' ';
            out += fixed(px(s.x[i])) + "," + fixed(py(s.y[i]));
        }
        out += "\"/>\n";
    }

    // Legend.
    double ly = kTop + 10;
    for (const Series& s : chart.series) {
        const double lx = kLeft + plot_w + 14;
        out += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" +
               fixed(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
               (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) + "\" font-size=\"12\">" + escape(s.name) +
               "</text>\n";
        ly += 20;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace svg

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

svg::Series series(const TimeSeries& ts, Column c, std::string name, std::string color, bool dashed = false) {
    return {std::move(name), std::move(color), ts.column(Column::t), ts.column(c), dashed};
}

}  // namespace

void render_plots(const TimeSeries& ts, const std::filesystem::path& dir,
                  const std::optional<control::ControlParams>& reference) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create plot directory " + dir.string() + ": " + ec.message());

    svg::Chart extension{"Side extensions", "time t [s]", "extension x [m]", {}};
    extension.series.push_back(series(ts, Column::x_L, "x_L", "#1f77b4"));
    extension.series.push_back(series(ts, Column::x_R, "x_R", "#d62728"));
    if (reference) {
        const auto [phase_l, phase_r] = control::mode_phases(reference->mode);
        svg::Series ref_l{"x_L ref", "#1f77b4", ts.column(Column::t), {}, true};
        svg::Series ref_r{"x_R ref", "#d62728", ts.column(Column::t), {}, true};
        for (double t : ts.column(Column::t)) {
            ref_l.y.push_back(control::reference(reference->amplitude, reference->omega, phase_l, t).x);
            ref_r.y.push_back(control::reference(reference->amplitude, reference->omega, phase_r, t).x);
        }
        extension.series.push_back(std::move(ref_l));
        extension.series.push_back(std::move(ref_r));
    }
    write_file(dir / "extension.svg", svg::render(extension));

    write_file(dir / "rotation.svg",
               svg::render({"Rotation angle", "time t [s]", "theta [rad]", {series(ts, Column::theta, "theta", "#2ca02c")}}));
    write_file(dir / "displacement.svg",
               svg::render({"Linear displacement", "time t [s]", "z [m]", {series(ts, Column::z, "z", "#9467bd")}}));
    write_file(dir / "torque.svg",
               svg::render({"Torque", "time t [s]", "tau [N m]", {series(ts, Column::tau, "tau", "#8c564b")}}));
    write_file(dir / "pressure.svg",
               svg::render({"Supply and packet pressures",
                            "time t [s]",
                            "gauge pressure [Pa]",
                            {series(ts, Column::P1_L, "P1_L", "#1f77b4", true),
                             series(ts, Column::P2_L, "P2_L", "#1f77b4"),
                             series(ts, Column::P1_R, "P1_R", "#d62728", true),
                             series(ts, Column::P2_R, "P2_R", "#d62728")}}));
}

}  // namespace bondsim::sim

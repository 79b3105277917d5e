// simulate: run closed-loop soft-actuator scenarios from config files.
//
//   simulate <config-file>... [--csv PATH] [--plots DIR] [--mode bending|extension]
//
// Flags override the corresponding config keys. Several config files run
// concurrently; --csv and --plots then apply only when a single file is given,
// and each file must name its own outputs.

#include <CLI11.hpp>

#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bondsim/errors.hpp"
#include "bondsim/sim/runner.hpp"

namespace {

struct Overrides {
    std::optional<std::string> csv;
    std::optional<std::string> plots;
    std::optional<bondsim::control::Mode> mode;
};

// Returns an empty string on success, otherwise a diagnostic.
std::string run_one(const std::string& config, const Overrides& o) {
    using namespace bondsim;
    try {
        sim::Scenario s = sim::load_config(config);
        if (o.csv) s.csv_path = *o.csv;
        if (o.plots) s.plot_dir = *o.plots;
        if (o.mode) s.control.mode = *o.mode;

        const sim::TimeSeries ts = sim::run_scenario(s);
        if (!s.csv_path.empty()) sim::write_csv(ts, s.csv_path);
        if (!s.plot_dir.empty()) sim::render_plots(ts, s.plot_dir, s.control);
        return {};
    } catch (const sim::ConfigError& e) {
        const char* kind = e.kind() == sim::ConfigError::Kind::Parse        ? "parse error"
                           : e.kind() == sim::ConfigError::Kind::UnknownKey ? "unknown key"
                           : e.kind() == sim::ConfigError::Kind::Io         ? "io error"
                                                                            : "validation error";
        return config + ": " + kind + ": " + e.what();
    } catch (const NonFiniteStateError& e) {
        return config + ": simulation diverged: " + e.what();
    } catch (const std::exception& e) {
        return config + ": error: " + e.what();
    }
}

// Concurrent runs must not write the same CSV file or plot directory.
std::optional<std::string> output_clash(const std::vector<std::string>& configs) {
    namespace fs = std::filesystem;
    std::map<fs::path, std::string> owners;
    for (const auto& c : configs) {
        bondsim::sim::Scenario s;
        try {
            s = bondsim::sim::load_config(c);
        } catch (const std::exception&) {
            continue;  // reported by the run itself
        }
        for (const auto& out : {s.csv_path, s.plot_dir}) {
            if (out.empty()) continue;
            const auto [it, fresh] = owners.emplace(fs::weakly_canonical(out), c);
            if (!fresh) return "'" + out + "' is written by both " + it->second + " and " + c;
        }
    }
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop simulation of a two-sided pneumatic bellows actuator"};

    std::vector<std::string> configs;
    std::string csv, plots, mode;
    app.add_option("config", configs, "Scenario config file(s)")->required()->check(CLI::ExistingFile);
    auto* csv_opt = app.add_option("--csv", csv, "CSV output path (overrides csv_path)");
    auto* plots_opt = app.add_option("--plots", plots, "Directory for SVG plots (overrides plot_dir)");
    auto* mode_opt =
        app.add_option("--mode", mode, "Actuation mode (overrides mode)")->check(CLI::IsMember({"bending", "extension"}));

    CLI11_PARSE(app, argc, argv);

    Overrides o;
    if (*csv_opt) o.csv = csv;
    if (*plots_opt) o.plots = plots;
    if (*mode_opt) o.mode = bondsim::control::parse_mode(mode);

    if (configs.size() > 1 && (o.csv || o.plots)) {
        std::cerr << "simulate: --csv and --plots need exactly one config file\n";
        return 2;
    }
    if (configs.size() > 1) {
        if (const auto clash = output_clash(configs)) {
            std::cerr << "simulate: " << *clash << '\n';
            return 2;
        }
    }

    std::vector<std::future<std::string>> jobs;
    for (const auto& c : configs) jobs.push_back(std::async(std::launch::async, run_one, c, o));

    int status = 0;
    for (auto& job : jobs) {
        const std::string err = job.get();
        if (!err.empty()) {
            std::cerr << "simulate: " << err << '\n';
            status = 1;
        }
    }
    return status;
}

#include "bondsim/sim/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bondsim::sim {

ConfigError::ConfigError(Kind kind, const std::string& what, std::size_t line, std::string key)
    : std::runtime_error(what), kind_(kind), line_(line), key_(std::move(key)) {}

void validate(const Scenario& s) {
    try {
        actuator::validate(s.actuator());
        control::validate(s.control);
        solver::validate(s.solver);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(ConfigError::Kind::Validation, e.what());
    }
    if (s.pressure_limit && (!(*s.pressure_limit > 0.0) || !std::isfinite(*s.pressure_limit)))
        throw ConfigError(ConfigError::Kind::Validation, "pressure_limit must be positive", 0, "pressure_limit");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Shortest text that parses back to the same double.
std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

struct Field {
    std::function<void(Scenario&, std::string_view value, std::size_t line, const std::string& key)> parse;
    std::function<std::string(const Scenario&)> print;
};

[[noreturn]] void bad_value(std::size_t line, const std::string& key, std::string_view value, const char* expected) {
    throw ConfigError(ConfigError::Kind::Parse,
                      "line " + std::to_string(line) + ": key '" + key + "' expects " + expected + ", got '" +
                          std::string(value) + "'",
                      line, key);
}

double parse_number(std::string_view v, std::size_t line, const std::string& key) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(line, key, v, "a number");
    return out;
}

std::size_t parse_count(std::string_view v, std::size_t line, const std::string& key) {
    std::size_t out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) bad_value(line, key, v, "a non-negative integer");
    return out;
}

template <typename Getter>
Field number_field(Getter get) {
    return Field{
        [get](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
            get(s) = parse_number(v, line, key);
        },
        [get](const Scenario& s) { return format_double(get(s)); },
    };
}

template <typename Getter>
Field string_field(Getter get) {
    return Field{
        [get](Scenario& s, std::string_view v, std::size_t, const std::string&) { get(s) = std::string(v); },
        [get](const Scenario& s) { return "\"" + get(s) + "\""; },
    };
}

const std::map<std::string, Field, std::less<>>& fields() {
    static const std::map<std::string, Field, std::less<>> table = [] {
        std::map<std::string, Field, std::less<>> f;
        f["mode"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                const auto mode = control::parse_mode(v);
                if (!mode) bad_value(line, key, v, "'bending' or 'extension'");
                s.control.mode = *mode;
            },
            [](const Scenario& s) { return std::string(control::to_string(s.control.mode)); },
        };
        f["solver"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                if (v == "rk4") {
                    s.solver.method = solver::Method::Rk4;
                } else if (v == "euler") {
                    s.solver.method = solver::Method::Euler;
                } else {
                    bad_value(line, key, v, "'rk4' or 'euler'");
                }
            },
            [](const Scenario& s) { return std::string(solver::to_string(s.solver.method)); },
        };
        f["c2_mode"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                if (v == "constant") {
                    s.packet.c2_mode = actuator::C2Mode::Constant;
                } else if (v == "state_dependent") {
                    s.packet.c2_mode = actuator::C2Mode::StateDependent;
                } else {
                    bad_value(line, key, v, "'constant' or 'state_dependent'");
                }
            },
            [](const Scenario& s) { return std::string(actuator::to_string(s.packet.c2_mode)); },
        };
        f["volume_coupled"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                if (v == "true") {
                    s.packet.volume_coupled = true;
                } else if (v == "false") {
                    s.packet.volume_coupled = false;
                } else {
                    bad_value(line, key, v, "'true' or 'false'");
                }
            },
            [](const Scenario& s) { return std::string(s.packet.volume_coupled ? "true" : "false"); },
        };
        f["record_stride"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                s.solver.record_stride = parse_count(v, line, key);
            },
            [](const Scenario& s) { return std::to_string(s.solver.record_stride); },
        };
        f["pressure_limit"] = Field{
            [](Scenario& s, std::string_view v, std::size_t line, const std::string& key) {
                if (v == "none") {
                    s.pressure_limit.reset();
                } else {
                    s.pressure_limit = parse_number(v, line, key);
                }
            },
            [](const Scenario& s) { return s.pressure_limit ? format_double(*s.pressure_limit) : "none"; },
        };
        f["t_end"] = number_field([](auto& s) -> auto& { return s.solver.t_end; });
        f["dt"] = number_field([](auto& s) -> auto& { return s.solver.dt; });
        f["m"] = number_field([](auto& s) -> auto& { return s.packet.m; });
        f["rb"] = number_field([](auto& s) -> auto& { return s.packet.Rb; });
        f["k"] = number_field([](auto& s) -> auto& { return s.packet.k; });
        f["cd"] = number_field([](auto& s) -> auto& { return s.packet.Cd; });
        f["d_orifice"] = number_field([](auto& s) -> auto& { return s.packet.D; });
        f["area"] = number_field([](auto& s) -> auto& { return s.packet.A; });
        f["rho"] = number_field([](auto& s) -> auto& { return s.packet.rho; });
        f["r_gas"] = number_field([](auto& s) -> auto& { return s.packet.Rgas; });
        f["temperature"] = number_field([](auto& s) -> auto& { return s.packet.T; });
        f["l0"] = number_field([](auto& s) -> auto& { return s.packet.L0; });
        f["mu"] = number_field([](auto& s) -> auto& { return s.mu; });
        f["kp"] = number_field([](auto& s) -> auto& { return s.control.kp; });
        f["kd"] = number_field([](auto& s) -> auto& { return s.control.kd; });
        f["amplitude"] = number_field([](auto& s) -> auto& { return s.control.amplitude; });
        f["omega"] = number_field([](auto& s) -> auto& { return s.control.omega; });
        f["csv_path"] = string_field([](auto& s) -> auto& { return s.csv_path; });
        f["plot_dir"] = string_field([](auto& s) -> auto& { return s.plot_dir; });
        return f;
    }();
    return table;
}

// Key order used when writing a config.
constexpr std::array kKeyOrder{
    "mode", "t_end", "dt", "record_stride", "solver", "m", "rb", "k", "cd", "d_orifice", "area", "rho", "r_gas",
    "temperature", "l0", "c2_mode", "volume_coupled", "mu", "kp", "kd", "amplitude", "omega", "pressure_limit",
    "csv_path", "plot_dir",
};

std::string_view unquote(std::string_view v, std::size_t line, const std::string& key) {
    if (v.size() >= 1 && (v.front() == '"' || v.front() == '\'')) {
        if (v.size() < 2 || v.back() != v.front())
            throw ConfigError(ConfigError::Kind::Parse, "line " + std::to_string(line) + ": unterminated string",
                              line, key);
        return v.substr(1, v.size() - 2);
    }
    return v;
}

// Strips a trailing comment that is not inside quotes.
std::string_view strip_comment(std::string_view line) {
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#' || c == ';') {
            return line.substr(0, i);
        }
    }
    return line;
}

}  // namespace

Scenario parse_config(std::string_view text) {
    Scenario s;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(ConfigError::Kind::Parse,
                              "line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                                  std::string(line) + "'",
                              line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = unquote(trim(line.substr(eq + 1)), line_no, key);
        if (key.empty())
            throw ConfigError(ConfigError::Kind::Parse, "line " + std::to_string(line_no) + ": missing key", line_no);

        const auto it = fields().find(key);
        if (it == fields().end())
            throw ConfigError(ConfigError::Kind::UnknownKey,
                              "line " + std::to_string(line_no) + ": unknown key '" + key + "'", line_no, key);
        if (!seen.insert(key).second)
            throw ConfigError(ConfigError::Kind::Parse,
                              "line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no, key);
        it->second.parse(s, value, line_no, key);
    }
    validate(s);
    return s;
}

Scenario load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(ConfigError::Kind::Io, "cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_config_string(const Scenario& s) {
    std::string out;
    for (const char* key : kKeyOrder) {
        out += key;
        out += " = ";
        out += fields().find(key)->second.print(s);
        out += '\n';
    }
    return out;
}

}  // namespace bondsim::sim

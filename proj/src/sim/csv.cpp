#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "bondsim/sim/runner.hpp"

namespace bondsim::sim {

namespace {

void append_number(std::string& out, double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), res.ptr);
}

}  // namespace

std::string format_csv(const TimeSeries& ts) {
    std::string out;
    out.reserve((ts.rows() + 1) * kColumnCount * 16);
    for (std::size_t i = 0; i < kColumnCount; ++i) {
        if (i) out += ',';
        out += kColumnNames[i];
    }
    out += '\n';
    for (std::size_t r = 0; r < ts.rows(); ++r) {
        for (std::size_t i = 0; i < kColumnCount; ++i) {
            if (i) out += ',';
            append_number(out, ts.column(i)[r]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const TimeSeries& ts, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::string text = format_csv(ts);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bondsim::sim

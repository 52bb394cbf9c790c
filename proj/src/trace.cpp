#include "gridsim/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "gridsim/errors.hpp"

namespace gridsim {

std::vector<double>& SimulationTrace::channel(const std::string& name) {
    return m_channels[name];
}

const std::vector<double>& SimulationTrace::channel(const std::string& name) const {
    auto it = m_channels.find(name);
    if (it == m_channels.end())
        throw InsufficientDataError("trace: no channel named '" + name + "'");
    return it->second;
}

std::vector<std::string> SimulationTrace::channelNames() const {
    std::vector<std::string> names;
    names.reserve(m_channels.size());
    for (const auto& [name, _] : m_channels) names.push_back(name);
    return names;
}

std::size_t SimulationTrace::length() const {
    return m_channels.empty() ? 0 : m_channels.begin()->second.size();
}

std::size_t SimulationTrace::indexAt(double t) const {
    if (m_dt <= 0.0) throw InsufficientDataError("trace: dt not set");
    const auto n = static_cast<long long>(std::llround(t / m_dt));
    if (n < 0) return 0;
    const std::size_t len = length();
    return std::min<std::size_t>(static_cast<std::size_t>(n), len);
}

std::vector<double> SimulationTrace::window(const std::string& name, double t_from,
                                            double t_to) const {
    const auto& ch = channel(name);
    const std::size_t a = indexAt(t_from), b = indexAt(t_to);
    if (b > ch.size() || a >= b)
        throw InsufficientDataError("trace: window [" + std::to_string(t_from) + ", " +
                                    std::to_string(t_to) + ") outside recorded data");
    return {ch.begin() + static_cast<long>(a), ch.begin() + static_cast<long>(b)};
}

namespace {

// locale-independent formatting, 9 significant digits
void appendNumber(std::string& out, double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    out.append(buf, res.ptr);
}

} // namespace

std::string SimulationTrace::toCsv() const {
    const std::size_t n = length();
    for (const auto& [name, samples] : m_channels)
        if (samples.size() != n)
            throw ConfigError("trace: channel '" + name + "' has " +
                              std::to_string(samples.size()) + " samples, expected " +
                              std::to_string(n));
    std::string out;
    out.reserve(n * (m_channels.size() + 1) * 14 + 64);
    out += "t_s";
    for (const auto& [name, _] : m_channels) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < n; ++i) {
        appendNumber(out, static_cast<double>(i) * m_dt);
        for (const auto& [_, samples] : m_channels) {
            out += ',';
            appendNumber(out, samples[i]);
        }
        out += '\n';
    }
    return out;
}

void SimulationTrace::writeCsv(const std::string& path) const {
    namespace fs = std::filesystem;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("trace: cannot open '" + tmp + "' for writing");
        const std::string body = toCsv();
        f.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!f) throw ConfigError("trace: write failed for '" + tmp + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw ConfigError("trace: rename to '" + path + "' failed: " + ec.message());
}

SimulationTrace SimulationTrace::readCsv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("trace: cannot open '" + path + "'");
    std::string header;
    if (!std::getline(f, header))
        throw ConfigError("trace: '" + path + "' is empty");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    std::vector<std::string> names;
    {
        std::stringstream ss(header);
        std::string field;
        while (std::getline(ss, field, ',')) names.push_back(field);
    }
    if (names.empty() || names[0] != "t_s")
        throw ConfigError("trace: '" + path + "' first column must be t_s");

    SimulationTrace trace;
    std::vector<std::vector<double>> cols(names.size());
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t pos = 0, col = 0;
        bool more = true, overflow = false;
        while (more) {
            const std::size_t next = line.find(',', pos);
            const std::string_view field{line.data() + pos,
                                         (next == std::string::npos ? line.size() : next) - pos};
            more = next != std::string::npos;
            if (col >= names.size()) {
                overflow = true;
                break;
            }
            double v = 0.0;
            auto res = std::from_chars(field.data(), field.data() + field.size(), v);
            if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
                throw ConfigError("trace: bad numeric field '" + std::string(field) + "' in '" +
                                  path + "'");
            cols[col].push_back(v);
            ++col;
            pos = next + 1;
        }
        if (col != names.size() || overflow)
            throw ConfigError("trace: row with wrong field count, expected " +
                              std::to_string(names.size()) + " in '" + path + "'");
    }
    if (cols[0].size() >= 2)
        trace.setDt(cols[0][1] - cols[0][0]);
    for (std::size_t c = 1; c < names.size(); ++c)
        trace.channel(names[c]) = std::move(cols[c]);
    return trace;
}

} // namespace gridsim

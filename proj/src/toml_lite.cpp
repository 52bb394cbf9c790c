#include "gridsim/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gridsim/errors.hpp"

namespace gridsim {
namespace toml {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("toml: line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// strip a trailing comment that is not inside a quoted string
std::string stripComment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_string = !in_string;
        else if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

bool validKey(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return true;
}

std::string parseQuoted(const std::string& raw, int line) {
    if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
    const std::string body = raw.substr(1, raw.size() - 2);
    if (body.find('"') != std::string::npos) fail(line, "embedded quote in string");
    return body;
}

Value parseValue(const std::string& raw, int line) {
    if (raw.empty()) fail(line, "missing value");
    if (raw == "true") return true;
    if (raw == "false") return false;
    if (raw.front() == '"') return parseQuoted(raw, line);
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        std::vector<std::string> items;
        std::string body = trim(raw.substr(1, raw.size() - 2));
        if (body.empty()) return items;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty() || item.front() != '"') fail(line, "array elements must be strings");
            items.push_back(parseQuoted(item, line));
        }
        return items;
    }
    double v = 0.0;
    auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
        fail(line, "bad value '" + raw + "'");
    return v;
}

} // namespace

Document parse(const std::string& text) {
    Document doc;
    std::string current;
    doc.sections[current];
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(stripComment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!validKey(name)) fail(line_no, "bad section name '" + name + "'");
            if (doc.sections.count(name) && name != current)
                fail(line_no, "duplicate section [" + name + "]");
            if (!doc.sections.count(name)) doc.sections[name];
            current = name;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (!validKey(key)) fail(line_no, "bad key '" + key + "'");
        auto& section = doc.sections[current];
        if (section.count(key))
            fail(line_no, "duplicate key '" + key + "' in [" + current + "]");
        section[key] = parseValue(trim(line.substr(eq + 1)), line_no);
    }
    return doc;
}

Document parseFile(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

} // namespace toml
} // namespace gridsim

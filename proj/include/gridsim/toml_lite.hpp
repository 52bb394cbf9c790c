#ifndef GRIDSIM_TOML_LITE_HPP
#define GRIDSIM_TOML_LITE_HPP

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gridsim {

// Just enough TOML for scenario files: [section] headers, scalar
// key = value pairs (float, integer, boolean, quoted string), arrays of
// strings, and # comments. Duplicate keys or sections, or anything outside
// the subset, are parse errors.
namespace toml {

using Value = std::variant<double, bool, std::string, std::vector<std::string>>;

struct Document {
    // section -> key -> value; keys before any section header live in "".
    std::map<std::string, std::map<std::string, Value>> sections;
};

/// Parse TOML text; throws ConfigError with a line number on malformed input.
Document parse(const std::string& text);

/// Parse a file; throws ConfigError when unreadable.
Document parseFile(const std::string& path);

} // namespace toml
} // namespace gridsim

#endif

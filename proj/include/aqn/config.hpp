// Key/value run configuration with [section] headers, '#' comments, and
// documented defaults; a minimal sweep config is two lines.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace aqn {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RunConfig {
  public:
    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_str(const std::string& section, const std::string& key,
                        const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& section, const std::string& key,
                         std::size_t fallback) const;
    // variants that require the key to be present
    double require_double(const std::string& section, const std::string& key) const;

  private:
    std::map<std::string, std::string> values_;  // "section.key" -> raw text
    std::map<std::string, int> lines_;
    std::string origin_;

    const std::string* find(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& why) const;
};

} // namespace aqn

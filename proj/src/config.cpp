#include "aqn/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aqn {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

RunConfig RunConfig::parse_string(const std::string& text, const std::string& origin) {
    RunConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.values_[section + "." + key] = val;
        cfg.lines_[section + "." + key] = lineno;
    }
    return cfg;
}

const std::string* RunConfig::find(const std::string& section, const std::string& key) const {
    auto it = values_.find(section + "." + key);
    return it == values_.end() ? nullptr : &it->second;
}

void RunConfig::fail(const std::string& section, const std::string& key,
                     const std::string& why) const {
    auto it = lines_.find(section + "." + key);
    std::string where = origin_;
    if (it != lines_.end()) where += ":" + std::to_string(it->second);
    throw ConfigError(where + ": [" + section + "] " + key + ": " + why);
}

bool RunConfig::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string RunConfig::get_str(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    double d = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0') fail(section, key, "not a number: " + *v);
    return d;
}

std::size_t RunConfig::get_size(const std::string& section, const std::string& key,
                                std::size_t fallback) const {
    const std::string* v = find(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    long long d = std::strtoll(v->c_str(), &end, 10);
    if (end == v->c_str() || *end != '\0' || d < 0) fail(section, key, "not a non-negative integer: " + *v);
    return static_cast<std::size_t>(d);
}

double RunConfig::require_double(const std::string& section, const std::string& key) const {
    if (!has(section, key)) fail(section, key, "required key missing");
    return get_double(section, key, 0.0);
}

} // namespace aqn

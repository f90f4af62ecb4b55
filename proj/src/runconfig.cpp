#include "heavyhex/runconfig.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace heavyhex {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_at(const std::string& source, int line, const std::string& msg) {
    throw std::invalid_argument(source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

bool RunConfig::has(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return true;
    }
    return false;
}

const std::string& RunConfig::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) return v;
    }
    throw std::out_of_range("config key '" + key + "' not set");
}

std::string RunConfig::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

long RunConfig::get_long(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t used = 0;
    long out;
    try {
        out = std::stol(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + v + "' is not an integer");
    }
    if (used != v.size())
        throw std::invalid_argument("config key '" + key + "': '" + v + "' is not an integer");
    return out;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t used = 0;
    double out;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + v + "' is not a number");
    }
    if (used != v.size())
        throw std::invalid_argument("config key '" + key + "': '" + v + "' is not a number");
    return out;
}

bool RunConfig::get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("config key '" + key + "': '" + v +
                                "' is not a boolean (true/false)");
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    const std::string& v = get(key);
    std::size_t used = 0;
    std::uint64_t out;
    try {
        out = std::stoull(v, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': '" + v +
                                    "' is not an unsigned integer");
    }
    if (used != v.size())
        throw std::invalid_argument("config key '" + key + "': '" + v +
                                    "' is not an unsigned integer");
    return out;
}

std::string RunConfig::render() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
    return os.str();
}

RunConfig parse_runconfig(std::istream& in, const std::set<std::string>& allowed_keys,
                          const std::string& source_name) {
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) fail_at(source_name, lineno, "expected 'key = value'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail_at(source_name, lineno, "empty key");
        if (value.empty()) fail_at(source_name, lineno, "empty value for key '" + key + "'");
        if (!allowed_keys.count(key)) fail_at(source_name, lineno, "unknown key '" + key + "'");
        if (cfg.has(key)) fail_at(source_name, lineno, "duplicate key '" + key + "'");
        cfg.set(key, value);
    }
    return cfg;
}

RunConfig load_runconfig(const std::string& path, const std::set<std::string>& allowed_keys) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_runconfig(in, allowed_keys, path);
}

}  // namespace heavyhex

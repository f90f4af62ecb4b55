#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace heavyhex {

/// Flat `key = value` configuration with insertion order preserved.  The
/// parser rejects unknown and duplicate keys so typos fail before any work
/// starts; `#` begins a comment.
class RunConfig {
public:
    bool has(const std::string& key) const;
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    void set(const std::string& key, const std::string& value);

    long get_long(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;

    /// One `key = value` line per entry, in insertion order.
    std::string render() const;

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

RunConfig parse_runconfig(std::istream& in, const std::set<std::string>& allowed_keys,
                          const std::string& source_name);

RunConfig load_runconfig(const std::string& path, const std::set<std::string>& allowed_keys);

}  // namespace heavyhex

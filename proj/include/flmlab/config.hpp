#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "flmlab/enumerate.hpp"

namespace flmlab {

// Flat "key=value" settings. Blank lines and lines starting with '#' are
// ignored; later assignments win.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::string& path);
    // Reads the file named by FLMLAB_CONFIG, or returns an empty config.
    static Config from_env();

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    void merge(const Config& other);
    std::optional<std::string> get(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    long get_int(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

    EnumLimits enum_limits() const;               // enum.max_dim, enum.max_normals
    std::uint64_t mc_samples(std::uint64_t fallback = 100000) const; // mc.samples
    double mc_sigmas() const;                     // mc.sigmas, default 3

private:
    std::map<std::string, std::string> values_;
};

} // namespace flmlab

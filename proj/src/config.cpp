#include "flmlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "flmlab/errors.hpp"
#include "flmlab/params.hpp"

namespace flmlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key=value");
        }
        cfg.values_[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

Config Config::from_env() {
    const char* path = std::getenv("FLMLAB_CONFIG");
    if (!path || !*path) return {};
    return load(path);
}

void Config::merge(const Config& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

std::optional<std::string> Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return get(key).value_or(fallback);
}

long Config::get_int(const std::string& key, long fallback) const {
    const auto v = get(key);
    return v ? parse_long(*v, key) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto v = get(key);
    return v ? parse_double(*v, key) : fallback;
}

EnumLimits Config::enum_limits() const {
    EnumLimits lim;
    lim.max_dim = static_cast<int>(get_int("enum.max_dim", lim.max_dim));
    lim.max_normals = static_cast<std::size_t>(get_int("enum.max_normals", static_cast<long>(lim.max_normals)));
    if (lim.max_dim < 1 || lim.max_normals < 2) throw InvalidArgument("config: enumeration limits must be positive");
    return lim;
}

std::uint64_t Config::mc_samples(std::uint64_t fallback) const {
    const long v = get_int("mc.samples", static_cast<long>(fallback));
    if (v < 1) throw InvalidArgument("config: mc.samples must be positive");
    return static_cast<std::uint64_t>(v);
}

double Config::mc_sigmas() const {
    const double v = get_double("mc.sigmas", 3.0);
    if (!(v >= 0.0)) throw InvalidArgument("config: mc.sigmas must be non-negative");
    return v;
}

} // namespace flmlab

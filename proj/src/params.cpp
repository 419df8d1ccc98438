#include "flmlab/params.hpp"

#include <charconv>
#include <cstdio>

#include "flmlab/errors.hpp"

namespace flmlab {

long parse_long(std::string_view s, std::string_view what) {
    long v = 0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty()) {
        throw InvalidArgument(std::string(what) + ": expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty()) {
        throw InvalidArgument(std::string(what) + ": expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

std::vector<int> parse_int_list(std::string_view s, std::string_view what) {
    std::vector<int> out;
    if (const auto dots = s.find(".."); dots != std::string_view::npos) {
        const long lo = parse_long(s.substr(0, dots), what);
        const long hi = parse_long(s.substr(dots + 2), what);
        if (lo < 1 || hi < lo) throw InvalidArgument(std::string(what) + ": bad range '" + std::string(s) + "'");
        for (long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
        return out;
    }
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(static_cast<int>(parse_long(item, what)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string format_shortest(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace flmlab

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flmlab {

// Strict text-to-number conversions; `what` names the value in errors.
long parse_long(std::string_view s, std::string_view what);
double parse_double(std::string_view s, std::string_view what);
// "16,32,64" or "16..256" (powers of two between the ends).
std::vector<int> parse_int_list(std::string_view s, std::string_view what);

// Shortest text that reads back to the same double.
std::string format_shortest(double v);
// %.17g
std::string format_full(double v);

} // namespace flmlab

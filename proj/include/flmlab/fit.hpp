#pragma once

#include <cstddef>
#include <vector>

namespace flmlab {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Least squares on (log x, log y); needs at least 3 points, all positive.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);
// Ordinary least squares on the raw values.
SlopeFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

} // namespace flmlab

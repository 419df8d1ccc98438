#include "flmlab/fit.hpp"

#include <algorithm>
#include <cmath>

#include "flmlab/errors.hpp"

namespace flmlab {

namespace {

SlopeFit least_squares(const std::vector<double>& lx, const std::vector<double>& ly) {
    const double m = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw InvalidArgument("slope fit: all x values coincide");
    SlopeFit f;
    f.points = lx.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy == 0.0 ? 1.0 : std::min(1.0, std::max(0.0, sxy * sxy / (sxx * syy)));
    return f;
}

void check_sizes(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InvalidArgument("slope fit: x and y differ in length");
    if (x.size() < 3) throw InvalidArgument("slope fit: need at least 3 points");
}

} // namespace

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    check_sizes(x, y);
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw InvalidArgument("fit_loglog: inputs must be finite and positive");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return least_squares(lx, ly);
}

SlopeFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    check_sizes(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InvalidArgument("fit_linear: inputs must be finite");
    }
    return least_squares(x, y);
}

} // namespace flmlab

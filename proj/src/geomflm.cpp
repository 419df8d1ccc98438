#include "flmlab/geomflm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "flmlab/errors.hpp"
#include "flmlab/random.hpp"

namespace flmlab {

GeomBody::GeomBody(int n, double c, double beta) : n_(n), c_(c), beta_(beta) {
    if (n < 2) throw InvalidArgument("GeomBody: n must be at least 2");
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("GeomBody: c must lie in (0, 1)");
    if (!(beta > c - 0.5 && beta < c)) throw InvalidArgument("GeomBody: beta must lie in (c - 1/2, c)");
    rho_ = std::pow(static_cast<double>(n), beta);
    apex_ = std::pow(static_cast<double>(n), c);
}

double support_K(const GeomBody& k, double t1, double rest_sq, double tn) {
    const double rho = k.ball_radius();
    const double norm = std::sqrt(t1 * t1 + rest_sq);
    const double a1 = std::fabs(t1);
    const double hA = rho * a1 <= norm ? rho * norm : a1 + std::sqrt(rest_sq) * std::sqrt(rho * rho - 1.0);
    return std::max(hA, k.apex() * tn);
}

double support_K(const GeomBody& k, const Vector& theta) {
    if (theta.size() != k.n()) throw DimensionMismatch("support_K: direction has the wrong length");
    const double norm_sq = theta.squaredNorm();
    if (std::fabs(std::sqrt(norm_sq) - 1.0) > 1e-9) throw InvalidArgument("support_K: direction is not a unit vector");
    const double t1 = theta(0);
    return support_K(k, t1, std::max(0.0, norm_sq - t1 * t1), theta(k.n() - 1));
}

namespace {

// Is x in tK, for x described by |x|^2, x_1, x_n?
bool in_scaled(const GeomBody& k, double t, double norm_sq, double x1, double xn) {
    const double a = k.apex();
    const double rho = k.ball_radius();
    // d = x - t p
    const double d_sq = norm_sq - 2.0 * t * a * xn + t * t * a * a;
    const double pd = a * xn - t * a * a;
    const double scale = norm_sq + t * t * a * a;
    if (d_sq <= 1e-28 * scale) return true; // x = t p, the apex
    // d_sq u^2 + 2 t pd u + t^2 (a^2 - rho^2) <= 0
    const double half_b = t * pd;
    const double c0 = t * t * (a * a - rho * rho);
    const double disc = half_b * half_b - d_sq * c0;
    if (disc < 0.0) return false;
    const double s = std::sqrt(disc);
    // Stable roots; c0 > 0 so both share a sign.
    const double q = half_b > 0.0 ? -(half_b + s) : -(half_b - s);
    double lo = q / d_sq;
    double hi = q != 0.0 ? c0 / q : lo;
    if (lo > hi) std::swap(lo, hi);
    double umax = hi;
    if (x1 != 0.0) umax = std::min(umax, t / std::fabs(x1));
    const double umin = std::max(lo, 1.0);
    return umin <= umax * (1.0 + 1e-15);
}

} // namespace

double gauge_K(const GeomBody& k, double norm_sq, double x1, double xn) {
    if (!(norm_sq > 0.0)) throw InvalidArgument("gauge_K: x must be nonzero");
    const double norm = std::sqrt(norm_sq);
    double lo = norm / k.apex();
    double hi = norm / k.inradius();
    if (in_scaled(k, lo, norm_sq, x1, xn)) return lo;
    if (!in_scaled(k, hi, norm_sq, x1, xn)) {
        hi *= 1.0 + 1e-12;
        if (!in_scaled(k, hi, norm_sq, x1, xn)) throw NumericalFailure("gauge_K: bisection bracket failed");
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (in_scaled(k, mid, norm_sq, x1, xn)) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

double gauge_K(const GeomBody& k, const Vector& x) {
    if (x.size() != k.n()) throw DimensionMismatch("gauge_K: point has the wrong length");
    return gauge_K(k, x.squaredNorm(), x(0), x(k.n() - 1));
}

DvReport dv_report(const GeomBody& k, std::uint64_t samples, std::uint64_t seed, double sigmas) {
    const MMStarEstimate mm = mc_m_mstar([&k](const Vector& x) { return gauge_K(k, x); },
                                         [&k](const Vector& x) { return support_K(k, x); }, k.n(), samples, seed);
    DvReport d;
    d.n = k.n();
    d.M = mm.m;
    d.Mstar = mm.mstar;
    d.mm_err = mm.product_err;
    d.r = k.inradius();
    d.R = k.circumradius();
    const double n = k.n();
    d.dvS = n * (d.M.mean * d.r) * (d.M.mean * d.r);
    d.dvP = n * (d.Mstar.mean / d.R) * (d.Mstar.mean / d.R);
    d.eq4 = d.dvS * d.dvP * (d.R / d.r) * (d.R / d.r) / (n * n);
    d.mm_pass = mm.product >= 1.0 - sigmas * mm.product_err;
    return d;
}

GeomSweep geom_sweep(double c, double beta, const std::vector<int>& n_list, std::uint64_t samples,
                     std::uint64_t seed) {
    GeomSweep sw;
    sw.c = c;
    sw.beta = beta;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (i > 0 && n_list[i] <= n_list[i - 1]) throw InvalidArgument("geom_sweep: n_list must be ascending");
        const GeomBody body(n_list[i], c, beta);
        sw.rows.push_back(dv_report(body, samples, derive_seed(seed, "geom-flm", static_cast<std::uint64_t>(n_list[i]))));
    }
    if (sw.rows.size() >= 3) {
        std::vector<double> ns, mstar, m, dvp, dvs;
        for (const auto& r : sw.rows) {
            ns.push_back(r.n);
            mstar.push_back(r.Mstar.mean);
            m.push_back(r.M.mean);
            dvp.push_back(r.dvP);
            dvs.push_back(r.dvS);
        }
        sw.mstar_slope = fit_loglog(ns, mstar);
        sw.m_slope = fit_loglog(ns, m);
        sw.dvP_slope = fit_loglog(ns, dvp);
        sw.dvS_slope = fit_loglog(ns, dvs);
    }
    return sw;
}

GeomFlmReport prop_geometric_flm(double a, double b, double c, const std::vector<int>& n_list,
                                 std::uint64_t samples, std::uint64_t seed) {
    constexpr double tol = 1e-9;
    if (!(a < 1.0 && b < 1.0 && c < 1.0)) throw InvalidArgument("prop_geometric_flm: need a, b, c < 1");
    if (std::fabs(a + b + 2.0 * c - 2.0) > tol) throw InvalidArgument("prop_geometric_flm: need a + b + 2c = 2");
    if (a < 1.0 - 2.0 * c - tol || b < 1.0 - 2.0 * c - tol) {
        throw InvalidArgument("prop_geometric_flm: need a, b >= 1 - 2c (vertex lower bound obstruction)");
    }
    GeomFlmReport rep;
    rep.a = a;
    rep.b = b;
    rep.c = c;
    rep.beta = c + (a - 1.0) / 2.0;
    rep.rR_sq_exponent = 2.0 * c;
    rep.sweep = geom_sweep(c, rep.beta, n_list, samples, seed);
    return rep;
}

Thm43Report thm43_check(const FCount& counts, double r, double R, double threshold) {
    if (!(r > 0.0 && R > 0.0)) throw InvalidArgument("thm43_check: radii must be positive");
    const double scale = static_cast<double>(counts.dim) * (r / R) * (r / R);
    Thm43Report rep;
    rep.v_ratio = counts.num_vertices.log() / scale;
    rep.f_ratio = counts.num_facets.log() / scale;
    rep.flagged = rep.v_ratio < threshold || rep.f_ratio < threshold;
    return rep;
}

SlabCapReport slab_cap_measure(int n, double beta) {
    if (!(beta < 0.5)) throw InvalidArgument("slab_cap_measure: beta >= 1/2 makes the bound vacuous");
    if (n < 2) throw InvalidArgument("slab_cap_measure: n must be at least 2");
    const double dn = n;
    const double t = std::pow(dn, -beta);
    SlabCapReport rep;
    rep.measure = t >= 1.0 ? 1.0 : 1.0 - 2.0 * cap_measure_exact(n, t);
    rep.bound = 1.0 - std::exp(-0.5 * std::pow(dn, 1.0 - 2.0 * beta));
    rep.holds = rep.measure >= rep.bound - 1e-14;
    return rep;
}

SlabCapReport slab_cap_measure(const GeomBody& k) { return slab_cap_measure(k.n(), k.beta()); }

} // namespace flmlab

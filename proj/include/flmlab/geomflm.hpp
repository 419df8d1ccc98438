#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "flmlab/count.hpp"
#include "flmlab/fit.hpp"
#include "flmlab/polytope.hpp"
#include "flmlab/sphere.hpp"

namespace flmlab {

// K = conv(A, p) with A = n^beta B_2^n cap {|x_1| <= 1} and apex p = n^c e_n.
// Requires n >= 2, c in (0, 1) and beta in (c - 1/2, c).
class GeomBody {
public:
    GeomBody(int n, double c, double beta);

    int n() const { return n_; }
    double c() const { return c_; }
    double beta() const { return beta_; }
    double ball_radius() const { return rho_; } // n^beta
    double apex() const { return apex_; }       // n^c
    // B_2 scaled by min(1, n^beta) sits inside K; equals 1 for beta >= 0.
    double inradius() const { return std::min(1.0, rho_); }
    double circumradius() const { return apex_; }

private:
    int n_;
    double c_, beta_, rho_, apex_;
};

// h_K(theta) = max(h_A(theta), n^c theta_n). With rho = n^beta:
// h_A = rho if rho |theta_1| <= 1, else |theta_1| + |theta'| sqrt(rho^2 - 1),
// theta' being theta without its first coordinate.
double support_K(const GeomBody& k, const Vector& theta);
// Same from the three numbers the formula needs (|theta'| given squared).
double support_K(const GeomBody& k, double t1, double rest_sq, double tn);

// Minkowski gauge by bisection on t. For fixed t, x in tK iff the ray
// y(u) = t p + u (x - t p), u >= 1, meets tA; |y(u)| <= t rho is a quadratic
// in u and |y_1(u)| = u |x_1| <= t is linear, so feasibility is an interval
// intersection.
double gauge_K(const GeomBody& k, const Vector& x);
double gauge_K(const GeomBody& k, double norm_sq, double x1, double xn);

struct DvReport {
    int n = 0;
    MCEstimate M, Mstar;
    double mm_err = 0.0; // standard error of M M*
    double r = 0.0, R = 0.0;
    double dvS = 0.0;    // n (M r)^2
    double dvP = 0.0;    // n (M*/R)^2
    double eq4 = 0.0;    // dvS dvP (R/r)^2 / n^2
    bool mm_pass = false; // M M* >= 1 - sigmas * mm_err
};

DvReport dv_report(const GeomBody& k, std::uint64_t samples, std::uint64_t seed, double sigmas = 3.0);

struct GeomSweep {
    double c = 0.0, beta = 0.0;
    std::vector<DvReport> rows;
    SlopeFit mstar_slope; // target beta
    SlopeFit m_slope;     // target -beta
    SlopeFit dvP_slope;
    SlopeFit dvS_slope;
};

// One estimate per n; sample seeds derived from (seed, "geom-flm", n).
GeomSweep geom_sweep(double c, double beta, const std::vector<int>& n_list, std::uint64_t samples,
                     std::uint64_t seed);

struct GeomFlmReport {
    double a = 0.0, b = 0.0, c = 0.0, beta = 0.0;
    GeomSweep sweep;
    double rR_sq_exponent = 0.0; // (R/r)^2 = n^{2c}
};

// beta = c + (a - 1)/2. Throws InvalidArgument unless a, b, c < 1,
// a + b + 2c = 2 and a, b >= 1 - 2c.
GeomFlmReport prop_geometric_flm(double a, double b, double c, const std::vector<int>& n_list,
                                 std::uint64_t samples, std::uint64_t seed);

struct Thm43Report {
    double v_ratio = 0.0; // log|V| / (n (r/R)^2)
    double f_ratio = 0.0; // log|F| / (n (r/R)^2)
    bool flagged = false; // either ratio below the threshold
};

Thm43Report thm43_check(const FCount& counts, double r, double R, double threshold = 0.2);

struct SlabCapReport {
    double measure = 0.0; // sigma(|theta_1| <= n^-beta)
    double bound = 0.0;   // 1 - exp(-n^{1 - 2 beta} / 2)
    bool holds = false;
};

// Throws InvalidArgument for beta >= 1/2, where the bound is vacuous.
SlabCapReport slab_cap_measure(const GeomBody& k);
SlabCapReport slab_cap_measure(int n, double beta);

} // namespace flmlab

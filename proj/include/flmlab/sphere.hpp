#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "flmlab/count.hpp"
#include "flmlab/polytope.hpp"

namespace flmlab {

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0; // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Function of a unit direction (support or gauge of some body). Must be
// safe to call concurrently.
using DirectionFn = std::function<double(const Vector&)>;

// Uniform point on S^{n-1}: Gaussian coordinates from CounterRng(seed, index),
// normalised. For n = 1 the result is +-1.
void sample_sphere_into(int n, std::uint64_t seed, std::uint64_t index, double* out);
Vector sample_sphere(int n, std::uint64_t seed, std::uint64_t index);
// Points 0 .. count-1 of the stream.
std::vector<Vector> sample_sphere_batch(int n, std::uint64_t seed, std::uint64_t count);

// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double incomplete_beta(double x, double a, double b);

// sigma({theta : <theta, u> >= t}) on S^{n-1}; n >= 2, t in [-1, 1].
double cap_measure_exact(int n, double t);

// Plain Monte Carlo average of f over the sphere.
MCEstimate mc_average(const DirectionFn& f, int n, std::uint64_t samples, std::uint64_t seed);
// M*(P) from the support function, M(P) from the gauge.
MCEstimate mc_mean_width(const DirectionFn& support_fn, int n, std::uint64_t samples, std::uint64_t seed);
MCEstimate mc_M(const DirectionFn& gauge_fn, int n, std::uint64_t samples, std::uint64_t seed);

// M and M* evaluated on the same directions. The product's standard error
// includes the covariance term, so it is valid despite the shared draws.
struct MMStarEstimate {
    MCEstimate m;
    MCEstimate mstar;
    double product = 0.0;
    double product_err = 0.0;
};
MMStarEstimate mc_m_mstar(const DirectionFn& gauge_fn, const DirectionFn& support_fn, int n,
                          std::uint64_t samples, std::uint64_t seed);

struct Lemma22Report {
    MCEstimate lhs; // M*(P)
    double rhs = 0.0;
    double logV = 0.0;
    int n = 0;
    double R = 0.0;
    bool hypothesis_ok = false; // log|V| < n/3
    bool pass = false;          // lhs.mean - sigmas * lhs.std_error <= rhs
};

// M*(P) <= R (sqrt(3 log|V| / n) + 1/sqrt|V|). A violated hypothesis is
// reported in the result, not thrown.
Lemma22Report lemma22_check(const DirectionFn& support_fn, int n, const BigCount& num_vertices, double R,
                            std::uint64_t samples, std::uint64_t seed, double sigmas = 3.0);
Lemma22Report lemma22_check(const VPolytope& p, std::uint64_t samples, std::uint64_t seed, double sigmas = 3.0);

struct FlmReport {
    long n = 0;
    double logV = 0.0;
    double logF = 0.0;
    double r = 0.0;
    double R = 0.0;
    double certificate = 0.0; // logV logF (R/r)^2 / n^2
    double alpha = 0.0;       // |F| / n
    std::optional<MMStarEstimate> mm;
    bool mm_pass = true; // M M* >= 1 - sigmas * err (true when not estimated)
};

FlmReport flm_certificate(const FCount& counts, double r, double R);
// Also estimates M M* from the given oracles.
FlmReport flm_certificate(const FCount& counts, double r, double R, const DirectionFn& gauge_fn,
                          const DirectionFn& support_fn, std::uint64_t samples, std::uint64_t seed,
                          double sigmas = 3.0);

struct RefinedFlmReport {
    long n = 0;
    double alpha = 0.0;
    double logV = 0.0;
    double logF = 0.0;
    double ratio = 0.0;    // logV logF / (n log(alpha n) / log(1 + alpha))
    double ratio_rR = 0.0; // logV logF (R/r)^2 / (n^2 log(alpha n) / log(1 + alpha))
};

// After rescaling so that r = 1, requires R <= sqrt(n) (relative slack tol).
RefinedFlmReport refined_flm_check(const FCount& counts, double r, double R, double tol = 1e-9);

} // namespace flmlab

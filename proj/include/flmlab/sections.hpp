#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flmlab/enumerate.hpp"
#include "flmlab/hanner.hpp"
#include "flmlab/polytope.hpp"
#include "flmlab/sphere.hpp"

namespace flmlab {

// k orthonormal columns spanning a uniformly random k-dimensional subspace
// of R^n.
struct SubspaceBasis {
    int n = 0;
    int k = 0;
    Eigen::MatrixXd columns; // n x k
    std::uint64_t seed = 0;
};

// Gaussian n x k matrix orthonormalised by Householder QR, with column signs
// fixed so that R has a positive diagonal.
SubspaceBasis random_subspace(int n, int k, std::uint64_t seed);

// P cap E in the coordinates of the basis, redundant halfspaces removed.
// Also returns the vertices of the section.
CanonicalH section(const HPolytope& p, const SubspaceBasis& b, const EnumLimits& limits = {});
HPolytope section_h(const HPolytope& p, const SubspaceBasis& b, const EnumLimits& limits = {});

// Orthogonal projection onto E, in basis coordinates, reduced to extreme points.
VPolytope project_v(const VPolytope& p, const SubspaceBasis& b);

struct SectionTrial {
    int trial = 0;
    std::uint64_t seed = 0;
    int redraws = 0;
    std::size_t V = 0;
    std::size_t F = 0;
    double r = 0.0;
    double R = 0.0;
    double diam = 0.0;
    double bound = 0.0; // experiment-specific comparison value
    bool pass = false;
};

struct Summary3 {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};
Summary3 summarize(std::vector<double> values);

struct SectionStats {
    std::string experiment;
    int n = 0; // ambient dimension
    int k = 0; // section dimension
    std::vector<SectionTrial> trials;
    Summary3 V, F, r, R, diam;
    double pass_rate = 0.0;
};

// Q = B_1^{2n} cap E with dim E = n. pass: |F| <= 2^{2n}, R <= 1 + 1e-9,
// r >= 1/sqrt(2n).
SectionStats cross_section_experiment(int n, int trials, std::uint64_t seed, const EnumLimits& limits = {});

struct SimplexSectionReport {
    SectionStats stats;
    MCEstimate mstar;          // M*(S_n)
    double radius_prediction; // sqrt(n / f(n)) M*(S_n)
    double log_binomial;      // log C(n, floor f(n))
    double radius_within_prediction = 0.0; // fraction of trials with R <= prediction
    double logV_within_binomial = 0.0;     // fraction with log|V| <= log_binomial
};

// Regular simplex S_n (inradius 1) cut by random subspaces of dimension
// n - floor(f(n)). pass: |F| <= n+1 and r >= 1.
SimplexSectionReport simplex_section_experiment(int n, const GrowthFn& f, int trials, std::uint64_t seed,
                                                std::uint64_t mstar_samples = 100000,
                                                const EnumLimits& limits = {});

// M*(S_n) / sqrt(n log n) from the vertex representation.
MCEstimate simplex_mstar(int n, std::uint64_t samples, std::uint64_t seed);

struct HannerSectionMode {
    // full-half: the dimension 2n body cut to dimension n.
    // delta: dimension N = 2n cut to k = floor(N - N^delta).
    std::optional<double> delta;
};

struct HannerSectionReport {
    SectionStats stats;
    std::string body;      // construction tree
    std::size_t body_F = 0;
    mpz_class face_total;  // all nonempty faces of the body
    MCEstimate mstar;      // M*(P) after normalisation
    double radius_ratio_le4 = 0.0; // fraction of trials with R(Q) <= 4 M*(P)
    double log_face_rate = 0.0;    // log(total faces) / dim
};

// Sections of the density-a body of dimension 2n, scaled so that B <= P.
// pass: |F(Q)| <= |F(P)| and |V(Q)| <= total face count of P.
HannerSectionReport hanner_section_experiment(double a, int n, HannerSectionMode mode, int trials,
                                              std::uint64_t seed, std::uint64_t mstar_samples = 100000,
                                              const EnumLimits& limits = {});

// Body for the low-M* check: an H-polytope, or the Euclidean ball when h is empty.
struct SectionBody {
    int n = 0;
    std::optional<HPolytope> h;
    std::string name;
    static SectionBody ball(int n);
    static SectionBody polytope(HPolytope h, std::string name);
};

struct LowMStarReport {
    SectionStats stats; // bound column holds diam sqrt(1 - lambda) / M*(K)
    double lambda = 0.0;
    MCEstimate mstar;
    Summary3 constant;
};

// diam(K cap E) sqrt(1 - lambda) / M*(K) for random E of dimension ceil(lambda n).
LowMStarReport low_mstar_check(const SectionBody& body, double lambda, int trials, std::uint64_t seed,
                               std::uint64_t mstar_samples = 100000, const EnumLimits& limits = {});

struct Example4Row {
    int n = 0;
    int k = 0;
    double median_R_over_r = 0.0;
    double median_logV = 0.0;
    double logF = 0.0;
    double scaled_ratio = 0.0; // median(R/r) log n / n
    double scaled_product = 0.0; // median(logV) logF / log^2 n
};

// Data-only sweep for the R/r ~ n / log n question: sections of S_n of
// dimension n - ceil(log n). Nothing is asserted about the outcome.
std::vector<Example4Row> example4_sweep(const std::vector<int>& n_list, int trials, std::uint64_t seed,
                                        const EnumLimits& limits = {});

} // namespace flmlab

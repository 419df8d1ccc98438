#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "flmlab/count.hpp"
#include "flmlab/polytope.hpp"

namespace flmlab {

// Limits come from the harness config keys enum.max_dim / enum.max_normals.
struct EnumLimits {
    int max_dim = 8;
    std::size_t max_normals = 4096;
    // Auto picks brute force while C(m, d) stays below this many subsets.
    std::uint64_t brute_force_subsets = 250000;
};

enum class EnumMethod {
    Auto,
    // Every d-subset of the input solved as a linear system, then filtered.
    BruteForce,
    // Incremental double description on the homogenised cone.
    DoubleDescription,
};

// Facets of conv(P); P must have the origin in its interior.
HPolytope facet_enum(const VPolytope& p, const EnumLimits& limits = {}, EnumMethod method = EnumMethod::Auto);

// Vertices of {x : <a_i, x> <= 1}. Throws UnboundedBody if the halfspaces do
// not bound a body.
VPolytope vertex_enum(const HPolytope& p, const EnumLimits& limits = {}, EnumMethod method = EnumMethod::Auto);

// An H-polytope with its redundant halfspaces removed, together with its vertices.
struct CanonicalH {
    HPolytope h;
    VPolytope v;
    // incidence[i] = indices of vertices of v lying on facet i of h
    std::vector<std::vector<std::size_t>> incidence;
};

// Drops duplicate normals and halfspaces that do not support a facet
// (determined from vertex incidences).
CanonicalH canonicalize_h(const HPolytope& p, const EnumLimits& limits = {});
HPolytope canonicalize(const HPolytope& p, const EnumLimits& limits = {});

// Is points[i] a vertex of conv(points)? Decided by a linear-feasibility test
// against the remaining points.
bool is_extreme(const PointSet& points, std::size_t i);
// Indices of extreme points after collapsing duplicates (first occurrence wins).
std::vector<std::size_t> extreme_indices(const PointSet& points);

bool membership(const HPolytope& p, const Vector& x);

// Counts of an enumerated pair.
FCount fcount(const HPolytope& h, const VPolytope& v);

struct VolumeEstimate {
    double ratio_to_ball = 0.0; // Vol(P) / Vol(B_2^n)
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

using MembershipOracle = std::function<bool(const Vector&)>;

// Hit-or-miss estimate of Vol(P)/Vol(B_2^n) for P inside r_bound * B_2^n.
VolumeEstimate volume_mc(const MembershipOracle& inside, int dim, double r_bound, std::uint64_t samples,
                         std::uint64_t seed);

} // namespace flmlab

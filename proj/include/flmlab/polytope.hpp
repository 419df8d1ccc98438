#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>

#include "flmlab/errors.hpp"

namespace flmlab {

using Vector = Eigen::VectorXd;
// Rows are points (or normals); one row per vertex/halfspace.
using PointSet = Eigen::MatrixXd;

// Point identity / incidence tolerance: 1e-9 * (1 + largest coordinate magnitude).
double geom_eps(const PointSet& pts);
double geom_eps(double max_abs);

// Polytope stored as the convex hull of its rows.
//
// Construction only checks full-dimensionality; removing interior or
// duplicated points is left to canonicalize() so that callers can observe
// redundancy (projections produce plenty of it).
class VPolytope {
public:
    VPolytope(int dim, PointSet vertices);

    int dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(vertices_.rows()); }
    const PointSet& vertices() const { return vertices_; }
    Eigen::RowVectorXd vertex(std::size_t i) const { return vertices_.row(static_cast<Eigen::Index>(i)); }

    // true iff 0 lies in the interior of the hull; computed lazily, cached.
    bool origin_interior() const;

private:
    int dim_;
    PointSet vertices_;
    mutable int origin_interior_ = -1;
};

// {x : <a_i, x> <= 1 for all i}. The origin is interior by construction.
class HPolytope {
public:
    HPolytope(int dim, PointSet normals);

    int dim() const { return dim_; }
    std::size_t size() const { return static_cast<std::size_t>(normals_.rows()); }
    const PointSet& normals() const { return normals_; }

private:
    int dim_;
    PointSet normals_;
};

// A body carried in both representations. Built by constructors that know
// both sides exactly (standard bodies, Hanner materialization).
struct PolytopePair {
    VPolytope v;
    HPolytope h;
};

double support(const VPolytope& p, const Vector& x);
double gauge(const HPolytope& p, const Vector& x);

HPolytope dualize(const VPolytope& p);
VPolytope dualize(const HPolytope& p);

VPolytope product(const VPolytope& p, const VPolytope& q);
HPolytope product(const HPolytope& p, const HPolytope& q);
VPolytope free_sum(const VPolytope& p, const VPolytope& q);
HPolytope free_sum(const HPolytope& p, const HPolytope& q);
PolytopePair product(const PolytopePair& p, const PolytopePair& q);
PolytopePair free_sum(const PolytopePair& p, const PolytopePair& q);

// Exact for the native representation.
double circumradius(const VPolytope& p);
double inradius(const HPolytope& p);

// Removes duplicate rows and points that are not extreme.
VPolytope canonicalize(const VPolytope& p);

// Scale about the origin.
VPolytope scaled(const VPolytope& p, double s);
HPolytope scaled(const HPolytope& p, double s);
PolytopePair scaled(const PolytopePair& p, double s);

// Standard bodies.
PolytopePair make_cube(int n);
PolytopePair make_cross(int n);
// Regular simplex with inradius 1 and circumradius n.
PolytopePair make_simplex(int n);
// [-1, 1]
PolytopePair make_segment();

// Dedup rows within tolerance, keeping first occurrence order.
PointSet unique_rows(const PointSet& rows, double eps);

// Hausdorff distance (max-coordinate metric) between two row sets; compares
// vertex sets up to order.
double point_set_distance(const PointSet& a, const PointSet& b);

} // namespace flmlab

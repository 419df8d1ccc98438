#include "flmlab/polytope.hpp"

#include "flmlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace flmlab {

double geom_eps(double max_abs) { return 1e-9 * (1.0 + max_abs); }

double geom_eps(const PointSet& pts) {
    return geom_eps(pts.size() ? pts.cwiseAbs().maxCoeff() : 0.0);
}

namespace {

void require_dim(int dim, Eigen::Index len, const char* what) {
    if (len != dim) {
        throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(dim) +
                                ", got " + std::to_string(len));
    }
}

int affine_rank(const PointSet& pts) {
    if (pts.rows() == 0) return -1;
    const PointSet centered = pts.rowwise() - pts.row(0);
    Eigen::FullPivLU<PointSet> lu(centered);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

} // namespace

VPolytope::VPolytope(int dim, PointSet vertices) : dim_(dim), vertices_(std::move(vertices)) {
    if (dim < 1) throw InvalidArgument("VPolytope: dimension must be positive");
    require_dim(dim, vertices_.cols(), "VPolytope");
    if (vertices_.rows() < dim + 1) {
        throw DegenerateInput("VPolytope: need at least dim+1 points, got " + std::to_string(vertices_.rows()));
    }
    if (affine_rank(vertices_) < dim) throw DegenerateInput("VPolytope: points are not full-dimensional");
}

bool VPolytope::origin_interior() const {
    if (origin_interior_ < 0) origin_interior_ = lp::origin_in_interior(vertices_) ? 1 : 0;
    return origin_interior_ == 1;
}

HPolytope::HPolytope(int dim, PointSet normals) : dim_(dim), normals_(std::move(normals)) {
    if (dim < 1) throw InvalidArgument("HPolytope: dimension must be positive");
    require_dim(dim, normals_.cols(), "HPolytope");
    if (normals_.rows() < dim + 1) {
        throw UnboundedBody("HPolytope: fewer than dim+1 halfspaces cannot bound a body");
    }
}

double support(const VPolytope& p, const Vector& x) {
    require_dim(p.dim(), x.size(), "support");
    return (p.vertices() * x).maxCoeff();
}

double gauge(const HPolytope& p, const Vector& x) {
    require_dim(p.dim(), x.size(), "gauge");
    return std::max(0.0, (p.normals() * x).maxCoeff());
}

PointSet unique_rows(const PointSet& rows, double eps) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        bool dup = false;
        for (Eigen::Index k : keep) {
            if ((rows.row(i) - rows.row(k)).cwiseAbs().maxCoeff() <= eps) {
                dup = true;
                break;
            }
        }
        if (!dup) keep.push_back(i);
    }
    PointSet out(static_cast<Eigen::Index>(keep.size()), rows.cols());
    for (std::size_t j = 0; j < keep.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = rows.row(keep[j]);
    return out;
}

VPolytope canonicalize(const VPolytope& p) {
    const PointSet pts = unique_rows(p.vertices(), geom_eps(p.vertices()));
    std::vector<bool> skip(static_cast<std::size_t>(pts.rows()), false);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        skip[static_cast<std::size_t>(i)] = true;
        // Earlier interior points stay skipped; they cannot help express others.
        if (!lp::in_convex_hull(pts, pts.row(i).transpose(), &skip)) {
            keep.push_back(i);
            skip[static_cast<std::size_t>(i)] = false;
        }
    }
    PointSet out(static_cast<Eigen::Index>(keep.size()), pts.cols());
    for (std::size_t j = 0; j < keep.size(); ++j) out.row(static_cast<Eigen::Index>(j)) = pts.row(keep[j]);
    return VPolytope(p.dim(), std::move(out));
}

HPolytope dualize(const VPolytope& p) {
    if (!p.origin_interior()) throw OriginNotInterior("dualize: origin is not interior to the V-polytope");
    return HPolytope(p.dim(), p.vertices());
}

VPolytope dualize(const HPolytope& p) {
    return canonicalize(VPolytope(p.dim(), p.normals()));
}

VPolytope product(const VPolytope& p, const VPolytope& q) {
    const Eigen::Index np = p.vertices().rows();
    const Eigen::Index nq = q.vertices().rows();
    PointSet out(np * nq, p.dim() + q.dim());
    for (Eigen::Index i = 0; i < np; ++i) {
        for (Eigen::Index j = 0; j < nq; ++j) {
            out.row(i * nq + j) << p.vertices().row(i), q.vertices().row(j);
        }
    }
    return VPolytope(p.dim() + q.dim(), std::move(out));
}

HPolytope product(const HPolytope& p, const HPolytope& q) {
    const Eigen::Index mp = p.normals().rows();
    const Eigen::Index mq = q.normals().rows();
    PointSet out = PointSet::Zero(mp + mq, p.dim() + q.dim());
    out.topLeftCorner(mp, p.dim()) = p.normals();
    out.bottomRightCorner(mq, q.dim()) = q.normals();
    return HPolytope(p.dim() + q.dim(), std::move(out));
}

VPolytope free_sum(const VPolytope& p, const VPolytope& q) {
    if (!p.origin_interior() || !q.origin_interior()) {
        throw OriginNotInterior("free_sum: both summands need the origin in their interior");
    }
    const Eigen::Index np = p.vertices().rows();
    const Eigen::Index nq = q.vertices().rows();
    PointSet out = PointSet::Zero(np + nq, p.dim() + q.dim());
    out.topLeftCorner(np, p.dim()) = p.vertices();
    out.bottomRightCorner(nq, q.dim()) = q.vertices();
    return VPolytope(p.dim() + q.dim(), std::move(out));
}

HPolytope free_sum(const HPolytope& p, const HPolytope& q) {
    const Eigen::Index mp = p.normals().rows();
    const Eigen::Index mq = q.normals().rows();
    PointSet out(mp * mq, p.dim() + q.dim());
    for (Eigen::Index i = 0; i < mp; ++i) {
        for (Eigen::Index j = 0; j < mq; ++j) {
            out.row(i * mq + j) << p.normals().row(i), q.normals().row(j);
        }
    }
    return HPolytope(p.dim() + q.dim(), std::move(out));
}

PolytopePair product(const PolytopePair& p, const PolytopePair& q) {
    return {product(p.v, q.v), product(p.h, q.h)};
}

PolytopePair free_sum(const PolytopePair& p, const PolytopePair& q) {
    return {free_sum(p.v, q.v), free_sum(p.h, q.h)};
}

double circumradius(const VPolytope& p) { return p.vertices().rowwise().norm().maxCoeff(); }

double inradius(const HPolytope& p) { return 1.0 / p.normals().rowwise().norm().maxCoeff(); }

VPolytope scaled(const VPolytope& p, double s) {
    if (!(s > 0.0)) throw InvalidArgument("scale factor must be positive");
    return VPolytope(p.dim(), p.vertices() * s);
}

HPolytope scaled(const HPolytope& p, double s) {
    if (!(s > 0.0)) throw InvalidArgument("scale factor must be positive");
    return HPolytope(p.dim(), p.normals() / s);
}

PolytopePair scaled(const PolytopePair& p, double s) { return {scaled(p.v, s), scaled(p.h, s)}; }

PolytopePair make_segment() {
    PointSet pts(2, 1);
    pts << -1.0, 1.0;
    return {VPolytope(1, pts), HPolytope(1, pts)};
}

PolytopePair make_cube(int n) {
    if (n < 1 || n > 20) throw InvalidArgument("cube: dimension must be in [1, 20]");
    const Eigen::Index count = Eigen::Index{1} << n;
    PointSet v(count, n);
    for (Eigen::Index i = 0; i < count; ++i) {
        for (int j = 0; j < n; ++j) v(i, j) = ((i >> j) & 1) ? 1.0 : -1.0;
    }
    PointSet h = PointSet::Zero(2 * n, n);
    for (int j = 0; j < n; ++j) {
        h(2 * j, j) = 1.0;
        h(2 * j + 1, j) = -1.0;
    }
    return {VPolytope(n, std::move(v)), HPolytope(n, std::move(h))};
}

PolytopePair make_cross(int n) {
    PolytopePair cube = make_cube(n);
    return {VPolytope(n, cube.h.normals()), HPolytope(n, cube.v.vertices())};
}

PolytopePair make_simplex(int n) {
    if (n < 1) throw InvalidArgument("simplex: dimension must be positive");
    // Vertices e_i - 1/(n+1) of the standard simplex live in the hyperplane
    // sum x = 0 of R^{n+1}; express them in the Helmert orthonormal basis
    // u_k = (1,..,1,-k,0,..)/sqrt(k(k+1)) of that hyperplane.
    const int m = n + 1;
    PointSet v(m, n);
    for (int i = 0; i < m; ++i) {
        for (int k = 1; k <= n; ++k) {
            const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
            double coord = 0.0;
            // <e_i - c*1, u_k> = <e_i, u_k> since 1 is orthogonal to u_k.
            if (i < k) coord = 1.0 / norm;
            else if (i == k) coord = -static_cast<double>(k) / norm;
            v(i, k - 1) = coord;
        }
    }
    // |e_i - 1/(n+1)| = sqrt(n/(n+1)); scale to circumradius n.
    const double scale = static_cast<double>(n) / std::sqrt(static_cast<double>(n) / m);
    v *= scale;
    // The facet opposite vertex i has outward unit normal -v_i/|v_i| = -v_i/n
    // and sits at distance 1 (the inradius), which is already rhs-1 form.
    PointSet h = -v / static_cast<double>(n);
    return {VPolytope(n, std::move(v)), HPolytope(n, std::move(h))};
}

double point_set_distance(const PointSet& a, const PointSet& b) {
    if (a.cols() != b.cols()) throw DimensionMismatch("point_set_distance: dimensions differ");
    if (a.rows() == 0 || b.rows() == 0) return a.rows() == b.rows() ? 0.0 : INFINITY;
    auto directed = [](const PointSet& x, const PointSet& y) {
        double worst = 0.0;
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
            double best = INFINITY;
            for (Eigen::Index j = 0; j < y.rows(); ++j) best = std::min(best, (x.row(i) - y.row(j)).cwiseAbs().maxCoeff());
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

} // namespace flmlab

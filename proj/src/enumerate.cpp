#include "flmlab/enumerate.hpp"

#include "flmlab/lp.hpp"
#include "flmlab/parallel.hpp"
#include "flmlab/random.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace flmlab {

namespace {

// ---------------------------------------------------------------------------
// Double description.
//
// The polytope {x : A x <= 1} is the t = 1 slice of the pointed cone
//   C = {(x, t) : <a_i, x> - t <= 0, -t <= 0}.
// Extreme rays with t > 0 are the vertices; a ray with t = 0 is a recession
// direction, i.e. the input was unbounded.
// ---------------------------------------------------------------------------

class Bitset {
public:
    explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    Bitset operator&(const Bitset& o) const {
        Bitset r;
        r.words_.resize(words_.size());
        for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
        return r;
    }
    // this ⊇ sub
    bool contains(const Bitset& sub) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if ((words_[k] & sub.words_[k]) != sub.words_[k]) return false;
        }
        return true;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct Ray {
    Eigen::VectorXd y;
    Bitset zero;
};

PointSet dd_vertices(const PointSet& A) {
    const Eigen::Index m = A.rows();
    const Eigen::Index d = A.cols();
    const Eigen::Index D = d + 1;
    const std::size_t nrows = static_cast<std::size_t>(m + 1);

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m + 1, D);
    G.topLeftCorner(m, d) = A;
    G.col(d).setConstant(-1.0);
    for (Eigen::Index i = 0; i <= m; ++i) G.row(i).normalize();

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(G.transpose());
    qr.setThreshold(1e-10);
    if (qr.rank() < D) throw UnboundedBody("vertex_enum: halfspaces leave a lineality direction");
    const auto& perm = qr.colsPermutation().indices();
    std::vector<Eigen::Index> initial(static_cast<std::size_t>(D));
    std::vector<bool> used(nrows, false);
    Eigen::MatrixXd G0(D, D);
    for (Eigen::Index k = 0; k < D; ++k) {
        initial[static_cast<std::size_t>(k)] = perm(k);
        used[static_cast<std::size_t>(perm(k))] = true;
        G0.row(k) = G.row(perm(k));
    }
    const Eigen::MatrixXd R0 = -G0.inverse();

    std::vector<Ray> rays;
    rays.reserve(static_cast<std::size_t>(D));
    for (Eigen::Index j = 0; j < D; ++j) {
        Ray r{R0.col(j).normalized(), Bitset(nrows)};
        for (Eigen::Index k = 0; k < D; ++k) {
            if (k != j) r.zero.set(static_cast<std::size_t>(initial[static_cast<std::size_t>(k)]));
        }
        rays.push_back(std::move(r));
    }

    constexpr double kZeroTol = 1e-9;
    const std::size_t min_common = static_cast<std::size_t>(D - 2);
    for (Eigen::Index row = 0; row <= m; ++row) {
        if (used[static_cast<std::size_t>(row)]) continue;
        const Eigen::VectorXd g = G.row(row).transpose();
        std::vector<double> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            s[k] = g.dot(rays[k].y);
            if (s[k] > kZeroTol) pos.push_back(k);
            else if (s[k] < -kZeroTol) neg.push_back(k);
        }
        std::vector<Ray> next;
        next.reserve(rays.size());
        if (!pos.empty()) {
            for (std::size_t p : pos) {
                for (std::size_t q : neg) {
                    Bitset common = rays[p].zero & rays[q].zero;
                    if (common.count() < min_common) continue;
                    bool adjacent = true;
                    for (std::size_t k = 0; k < rays.size(); ++k) {
                        if (k == p || k == q) continue;
                        if (rays[k].zero.contains(common)) {
                            adjacent = false;
                            break;
                        }
                    }
                    if (!adjacent) continue;
                    Ray r{(s[p] * rays[q].y - s[q] * rays[p].y).normalized(), std::move(common)};
                    r.zero.set(static_cast<std::size_t>(row));
                    next.push_back(std::move(r));
                }
            }
        }
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (s[k] > kZeroTol) continue;
            if (s[k] >= -kZeroTol) rays[k].zero.set(static_cast<std::size_t>(row));
            next.push_back(std::move(rays[k]));
        }
        rays = std::move(next);
#ifdef FLMLAB_DD_DEBUG
        for (auto& r : rays) {
            for (Eigen::Index q = 0; q <= m; ++q) {
                bool processed = used[static_cast<std::size_t>(q)] || q <= row;
                if (processed && G.row(q).dot(r.y) > 1e-7) fprintf(stderr, "row %ld: ray violates %ld (%g)\n", (long)row, (long)q, G.row(q).dot(r.y));
            }
        }
#endif
    }

    PointSet out(static_cast<Eigen::Index>(rays.size()), d);
    for (std::size_t k = 0; k < rays.size(); ++k) {
        const double t = rays[k].y(d);
        if (t <= 1e-9) throw UnboundedBody("vertex_enum: the halfspaces admit a recession direction");
        out.row(static_cast<Eigen::Index>(k)) = rays[k].y.head(d).transpose() / t;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute force: every d-subset of rows, solved as A_S x = 1, kept if feasible.
// ---------------------------------------------------------------------------

PointSet brute_vertices(const PointSet& A) {
    const int m = static_cast<int>(A.rows());
    const int d = static_cast<int>(A.cols());
    const double eps = geom_eps(A);
    std::vector<int> idx(static_cast<std::size_t>(d));
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Eigen::VectorXd> found;
    Eigen::MatrixXd sub(d, d);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(d);
    while (true) {
        for (int r = 0; r < d; ++r) sub.row(r) = A.row(idx[static_cast<std::size_t>(r)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
        lu.setThreshold(1e-10);
        if (lu.isInvertible()) {
            const Eigen::VectorXd x = lu.solve(ones);
            if ((A * x).maxCoeff() <= 1.0 + geom_eps(x.cwiseAbs().maxCoeff()) + eps) found.push_back(x);
        }
        int k = d - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - d + k) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < d; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    PointSet out(static_cast<Eigen::Index>(found.size()), d);
    for (std::size_t k = 0; k < found.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = found[k].transpose();
    return out;
}

double binomial(std::size_t m, std::size_t k) {
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(m - k + i) / static_cast<double>(i);
    return r;
}

void check_limits(int dim, std::size_t rows, const EnumLimits& limits, const char* what) {
    if (dim > limits.max_dim) {
        throw LimitExceeded(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds enum.max_dim=" +
                            std::to_string(limits.max_dim));
    }
    if (rows > limits.max_normals) {
        throw LimitExceeded(std::string(what) + ": " + std::to_string(rows) + " inputs exceed enum.max_normals=" +
                            std::to_string(limits.max_normals));
    }
}

// Rows of A must positively span R^d for {A x <= 1} to be bounded. A cheap
// random probe first, then the exact LP test.
void require_bounded(const PointSet& A) {
    const auto d = A.cols();
    for (std::uint64_t i = 0; i < 1000; ++i) {
        CounterRng rng(0x5eedb0d1ULL, i);
        Eigen::VectorXd dir(d);
        for (Eigen::Index j = 0; j < d; ++j) dir(j) = rng.normal();
        if ((A * dir).maxCoeff() <= 0.0) throw UnboundedBody("vertex_enum: found a direction with no bounding halfspace");
    }
    if (!lp::origin_in_interior(A)) throw UnboundedBody("vertex_enum: normals do not positively span the space");
}

PointSet polar_vertices(const PointSet& A, const EnumLimits& limits, EnumMethod method) {
    const auto d = static_cast<std::size_t>(A.cols());
    const auto m = static_cast<std::size_t>(A.rows());
    if (method == EnumMethod::Auto) {
        method = binomial(m, d) <= static_cast<double>(limits.brute_force_subsets) ? EnumMethod::BruteForce
                                                                                   : EnumMethod::DoubleDescription;
    }
    PointSet raw = method == EnumMethod::BruteForce ? brute_vertices(A) : dd_vertices(A);
    return unique_rows(raw, geom_eps(raw));
}

int affine_rank(const PointSet& pts) {
    if (pts.rows() == 0) return -1;
    const PointSet centered = pts.rowwise() - pts.row(0);
    Eigen::FullPivLU<PointSet> lu(centered);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

} // namespace

HPolytope facet_enum(const VPolytope& p, const EnumLimits& limits, EnumMethod method) {
    check_limits(p.dim(), p.size(), limits, "facet_enum");
    if (!p.origin_interior()) throw DegenerateInput("facet_enum: origin is not interior to the hull");
    const PointSet pts = unique_rows(p.vertices(), geom_eps(p.vertices()));
    return HPolytope(p.dim(), polar_vertices(pts, limits, method));
}

VPolytope vertex_enum(const HPolytope& p, const EnumLimits& limits, EnumMethod method) {
    check_limits(p.dim(), p.size(), limits, "vertex_enum");
    const PointSet normals = unique_rows(p.normals(), geom_eps(p.normals()));
    require_bounded(normals);
    return VPolytope(p.dim(), polar_vertices(normals, limits, method));
}

CanonicalH canonicalize_h(const HPolytope& p, const EnumLimits& limits) {
    const PointSet normals = unique_rows(p.normals(), geom_eps(p.normals()));
    VPolytope v = vertex_enum(HPolytope(p.dim(), normals), limits);
    const PointSet& verts = v.vertices();
    const double tol = 1e-8;
    std::vector<Eigen::Index> keep;
    std::vector<std::vector<std::size_t>> incidence;
    for (Eigen::Index i = 0; i < normals.rows(); ++i) {
        const Eigen::VectorXd vals = verts * normals.row(i).transpose();
        std::vector<std::size_t> on;
        for (Eigen::Index k = 0; k < vals.size(); ++k) {
            if (vals(k) >= 1.0 - tol) on.push_back(static_cast<std::size_t>(k));
        }
        if (static_cast<int>(on.size()) < p.dim()) continue;
        PointSet sub(static_cast<Eigen::Index>(on.size()), p.dim());
        for (std::size_t k = 0; k < on.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = verts.row(static_cast<Eigen::Index>(on[k]));
        if (affine_rank(sub) == p.dim() - 1) {
            keep.push_back(i);
            incidence.push_back(std::move(on));
        }
    }
    PointSet kept(static_cast<Eigen::Index>(keep.size()), p.dim());
    for (std::size_t k = 0; k < keep.size(); ++k) kept.row(static_cast<Eigen::Index>(k)) = normals.row(keep[k]);
    return CanonicalH{HPolytope(p.dim(), std::move(kept)), std::move(v), std::move(incidence)};
}

HPolytope canonicalize(const HPolytope& p, const EnumLimits& limits) { return canonicalize_h(p, limits).h; }

bool is_extreme(const PointSet& points, std::size_t i) {
    if (points.rows() < 2) throw InvalidArgument("is_extreme: need at least two points");
    if (i >= static_cast<std::size_t>(points.rows())) throw InvalidArgument("is_extreme: index out of range");
    const double eps = geom_eps(points);
    const auto row = static_cast<Eigen::Index>(i);
    std::vector<bool> skip(static_cast<std::size_t>(points.rows()), false);
    for (Eigen::Index k = 0; k < points.rows(); ++k) {
        if ((points.row(k) - points.row(row)).cwiseAbs().maxCoeff() <= eps) skip[static_cast<std::size_t>(k)] = true;
    }
    return !lp::in_convex_hull(points, points.row(row).transpose(), &skip);
}

std::vector<std::size_t> extreme_indices(const PointSet& points) {
    const double eps = geom_eps(points);
    std::vector<bool> dup(static_cast<std::size_t>(points.rows()), false);
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        if (dup[static_cast<std::size_t>(i)]) continue;
        for (Eigen::Index k = i + 1; k < points.rows(); ++k) {
            if ((points.row(k) - points.row(i)).cwiseAbs().maxCoeff() <= eps) dup[static_cast<std::size_t>(k)] = true;
        }
    }
    std::vector<std::size_t> out;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        if (dup[static_cast<std::size_t>(i)]) continue;
        std::vector<bool> skip = dup;
        skip[static_cast<std::size_t>(i)] = true;
        if (!lp::in_convex_hull(points, points.row(i).transpose(), &skip)) out.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

bool membership(const HPolytope& p, const Vector& x) {
    return gauge(p, x) <= 1.0 + geom_eps(x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
}

FCount fcount(const HPolytope& h, const VPolytope& v) {
    if (h.dim() != v.dim()) throw DimensionMismatch("fcount: representations disagree on dimension");
    return FCount{BigCount(v.size()), BigCount(h.size()), h.dim()};
}

VolumeEstimate volume_mc(const MembershipOracle& inside, int dim, double r_bound, std::uint64_t samples,
                         std::uint64_t seed) {
    if (samples == 0) throw InvalidArgument("volume_mc: samples must be positive");
    if (dim < 1 || !(r_bound > 0.0)) throw InvalidArgument("volume_mc: need dim >= 1 and r_bound > 0");
    const Moments hits = block_moments(samples, [&](std::uint64_t i) {
        CounterRng rng(seed, i);
        Vector x(dim);
        double norm2 = 0.0;
        do {
            for (int j = 0; j < dim; ++j) x(j) = rng.normal();
            norm2 = x.squaredNorm();
        } while (norm2 == 0.0);
        const double radius = r_bound * std::pow(rng.uniform(), 1.0 / dim);
        x *= radius / std::sqrt(norm2);
        return inside(x) ? 1.0 : 0.0;
    });
    const double p = hits.sum / static_cast<double>(samples);
    const double scale = std::pow(r_bound, dim);
    VolumeEstimate est;
    est.ratio_to_ball = p * scale;
    est.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

} // namespace flmlab

#include <doctest.h>

#include <cmath>

#include "flmlab/count.hpp"
#include "flmlab/enumerate.hpp"
#include "flmlab/errors.hpp"
#include "flmlab/lp.hpp"
#include "flmlab/polytope.hpp"
#include "flmlab/sphere.hpp"

using namespace flmlab;

namespace {

VPolytope random_sphere_polytope(int n, int m, std::uint64_t seed) {
    PointSet pts(m, n);
    for (int j = 0; j < m; ++j) pts.row(j) = sample_sphere(n, seed, static_cast<std::uint64_t>(j)).transpose();
    return VPolytope(n, std::move(pts));
}

// Support of conv(rows) by scanning every row; the gauge is checked against it.
double scan_support(const PointSet& pts, const Vector& x) { return (pts * x).maxCoeff(); }

} // namespace

TEST_CASE("big counts") {
    CHECK(BigCount(12) == BigCount(3) * BigCount(4));
    CHECK(BigCount::pow2(10) == BigCount(1024));
    CHECK(BigCount::pow2(3) + BigCount(8) == BigCount(16));
    CHECK(BigCount(6) + BigCount(10) == BigCount(16));
    CHECK(BigCount(0).is_zero());
    CHECK(BigCount(5) < BigCount(6));
    CHECK(BigCount::pow2(100) > BigCount(~0ULL));
    CHECK(BigCount(1000).str() == "1000");
    CHECK(BigCount::pow2(64).bit_length() == 65);
    CHECK(BigCount::pow2(1000000000).log2() == doctest::Approx(1e9));
    CHECK(BigCount(3).log() == doctest::Approx(std::log(3.0)));
    CHECK(BigCount(7).to_u64() == 7u);
    CHECK_FALSE(BigCount::pow2(70).to_u64().has_value());
    // (2^a + 2^a) collapses back to a single power of two.
    CHECK(BigCount::pow2(500) + BigCount::pow2(500) == BigCount::pow2(501));
}

TEST_CASE("standard bodies: counts and radii") {
    for (int n = 2; n <= 5; ++n) {
        const PolytopePair cube = make_cube(n), cross = make_cross(n), simp = make_simplex(n);
        CHECK(cube.v.size() == (1u << n));
        CHECK(cube.h.size() == static_cast<std::size_t>(2 * n));
        CHECK(cross.v.size() == static_cast<std::size_t>(2 * n));
        CHECK(cross.h.size() == (1u << n));
        CHECK(simp.v.size() == static_cast<std::size_t>(n + 1));
        CHECK(simp.h.size() == static_cast<std::size_t>(n + 1));
        CHECK(circumradius(cube.v) == doctest::Approx(std::sqrt(n)));
        CHECK(inradius(cube.h) == doctest::Approx(1.0));
        CHECK(circumradius(cross.v) == doctest::Approx(1.0));
        CHECK(inradius(cross.h) == doctest::Approx(1.0 / std::sqrt(n)));
        CHECK(circumradius(simp.v) == doctest::Approx(n));
        CHECK(inradius(simp.h) == doctest::Approx(1.0));
    }
}

TEST_CASE("constructors validate input") {
    CHECK_THROWS_AS(VPolytope(3, PointSet::Zero(4, 2)), DimensionMismatch);
    CHECK_THROWS_AS(dualize(VPolytope(2, (PointSet(3, 2) << 1, 1, 2, 1, 1, 2).finished())), OriginNotInterior);
    CHECK_THROWS_AS(vertex_enum(HPolytope(2, (PointSet(2, 2) << 1, 0, 0, 1).finished())), UnboundedBody);
}

TEST_CASE("support and gauge of the square") {
    const PolytopePair sq = make_cube(2);
    Vector x(2);
    x << 3.0, -1.0;
    CHECK(support(sq.v, x) == doctest::Approx(4.0));
    CHECK(gauge(sq.h, x) == doctest::Approx(3.0));
    CHECK(gauge(make_cross(2).h, x) == doctest::Approx(4.0));
}

TEST_CASE("brute force and double description agree") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int n = 2 + static_cast<int>(seed % 3);
        const VPolytope v = random_sphere_polytope(n, 4 * n, seed);
        if (!v.origin_interior()) continue;
        const HPolytope bf = facet_enum(v, {}, EnumMethod::BruteForce);
        const HPolytope dd = facet_enum(v, {}, EnumMethod::DoubleDescription);
        CHECK(bf.size() == dd.size());
        CHECK(point_set_distance(bf.normals(), dd.normals()) < 1e-8);
        const VPolytope vb = vertex_enum(bf, {}, EnumMethod::BruteForce);
        const VPolytope vd = vertex_enum(bf, {}, EnumMethod::DoubleDescription);
        CHECK(point_set_distance(vb.vertices(), vd.vertices()) < 1e-8);
        CHECK(vb.size() == canonicalize(v).size());
    }
}

TEST_CASE("extreme points agree with facet membership") {
    for (std::uint64_t seed = 20; seed < 26; ++seed) {
        const int n = 3;
        PointSet pts(14, n);
        const VPolytope base = random_sphere_polytope(n, 10, seed);
        if (!base.origin_interior()) continue;
        pts.topRows(10) = base.vertices();
        // Four interior points that must never be extreme.
        for (int j = 0; j < 4; ++j) pts.row(10 + j) = 0.1 * base.vertices().row(j);
        const HPolytope h = facet_enum(VPolytope(n, pts));
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
            // A vertex lies on at least n facets.
            int tight = 0;
            for (Eigen::Index f = 0; f < h.normals().rows(); ++f) {
                if (std::fabs(h.normals().row(f).dot(pts.row(i)) - 1.0) < 1e-9) ++tight;
            }
            CHECK(is_extreme(pts, static_cast<std::size_t>(i)) == (tight >= n));
        }
    }
}

TEST_CASE("enumeration limits") {
    EnumLimits lim;
    lim.max_dim = 3;
    CHECK_THROWS_AS(facet_enum(make_cross(4).v, lim), LimitExceeded);
    lim.max_dim = 8;
    lim.max_normals = 10;
    CHECK_THROWS_AS(facet_enum(make_cube(4).v, lim), LimitExceeded);
}

TEST_CASE("polar duality properties on random bodies") {
    for (std::uint64_t seed = 40; seed < 48; ++seed) {
        const VPolytope v = canonicalize(random_sphere_polytope(3, 12, seed));
        if (!v.origin_interior()) continue;
        const VPolytope polar = vertex_enum(dualize(v));
        // Involution.
        const VPolytope back = vertex_enum(dualize(polar));
        CHECK(point_set_distance(back.vertices(), v.vertices()) < 1e-8);
        // Counts swap.
        CHECK(polar.size() == facet_enum(v).size());
        CHECK(facet_enum(polar).size() == v.size());
        // Gauge of P is the support of the polar.
        const HPolytope h = facet_enum(v);
        for (std::uint64_t i = 0; i < 20; ++i) {
            const Vector x = 2.5 * sample_sphere(3, seed + 100, i);
            CHECK(gauge(h, x) == doctest::Approx(scan_support(polar.vertices(), x)).epsilon(1e-9));
        }
        // R(P) r(P polar) = 1.
        CHECK(circumradius(v) * inradius(dualize(v)) == doctest::Approx(1.0));
    }
}

TEST_CASE("products and free sums") {
    const PolytopePair sq = make_cube(2), tri = make_simplex(2);
    const PolytopePair p = product(sq, tri), s = free_sum(sq, tri);
    CHECK(p.v.dim() == 4);
    CHECK(vertex_enum(p.h).size() == 12);
    CHECK(facet_enum(p.v).size() == 7);
    CHECK(vertex_enum(s.h).size() == 7);
    CHECK(facet_enum(s.v).size() == 12);
    CHECK(circumradius(p.v) == doctest::Approx(std::sqrt(2.0 + 4.0)));
    CHECK(inradius(p.h) == doctest::Approx(1.0));
    CHECK(circumradius(s.v) == doctest::Approx(2.0));
    // (P (+) Q)° = P° x Q°
    CHECK(point_set_distance(dualize(s.v).normals(), product(dualize(sq.v), dualize(tri.v)).normals()) < 1e-12);
    CHECK_THROWS_AS(free_sum(VPolytope(1, (PointSet(2, 1) << 1, 2).finished()), sq.v), OriginNotInterior);
}

TEST_CASE("canonicalization removes redundancy") {
    PointSet pts(6, 2);
    pts << 1, 1, -1, 1, -1, -1, 1, -1, 0.2, 0.3, 1, 1;
    CHECK(canonicalize(VPolytope(2, pts)).size() == 4);
    PointSet normals(5, 2);
    normals << 1, 0, -1, 0, 0, 1, 0, -1, 0.5, 0.5;
    CHECK(canonicalize(HPolytope(2, normals)).size() == 4);
}

TEST_CASE("simplex lp") {
    // min -x1 - x2 with x1 + x2 + s = 1
    Eigen::MatrixXd A(1, 3);
    A << 1, 1, 1;
    Eigen::VectorXd b(1), c(3);
    b << 1;
    c << -1, -1, 0;
    const lp::Result r = lp::minimize(A, b, c);
    CHECK(r.status == lp::Status::Optimal);
    CHECK(r.objective == doctest::Approx(-1.0));
    Eigen::VectorXd bad(1);
    bad << -1;
    CHECK(lp::minimize(A, bad, c).status == lp::Status::Infeasible);
    CHECK(lp::origin_in_interior(make_cube(3).v.vertices()));
}

TEST_CASE("hit-or-miss volume") {
    const HPolytope cube = make_cube(2).h;
    const VolumeEstimate e = volume_mc([&](const Vector& x) { return membership(cube, x); }, 2, std::sqrt(2.0),
                                       200000, 7);
    // Area 4 against pi.
    CHECK(std::fabs(e.ratio_to_ball - 4.0 / M_PI) < 4 * e.std_error + 1e-12);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "flmlab/enumerate.hpp"
#include "flmlab/hanner.hpp"

using namespace flmlab;

namespace {

int affine_dim(const PointSet& v, const std::vector<std::size_t>& idx) {
    if (idx.size() <= 1) return 0;
    PointSet d(static_cast<Eigen::Index>(idx.size() - 1), v.cols());
    for (std::size_t i = 1; i < idx.size(); ++i) d.row(static_cast<Eigen::Index>(i - 1)) = v.row(idx[i]) - v.row(idx[0]);
    Eigen::FullPivLU<PointSet> lu(d);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
}

// Face lattice from facet-vertex incidences: every proper face is an
// intersection of facets, so closing the facet sets under intersection
// yields all of them.
std::vector<long> face_counts(const CanonicalH& c) {
    const int d = c.v.dim();
    std::set<std::vector<std::size_t>> faces;
    std::vector<std::vector<std::size_t>> frontier;
    for (auto f : c.incidence) {
        std::sort(f.begin(), f.end());
        if (faces.insert(f).second) frontier.push_back(f);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& a : frontier) {
            for (const auto& b : c.incidence) {
                std::vector<std::size_t> bs = b, out;
                std::sort(bs.begin(), bs.end());
                std::set_intersection(a.begin(), a.end(), bs.begin(), bs.end(), std::back_inserter(out));
                if (!out.empty() && faces.insert(out).second) next.push_back(out);
            }
        }
        frontier = std::move(next);
    }
    std::vector<long> f(static_cast<std::size_t>(d + 1), 0);
    for (const auto& face : faces) ++f[static_cast<std::size_t>(affine_dim(c.v.vertices(), face))];
    f[static_cast<std::size_t>(d)] = 1;
    return f;
}

} // namespace

TEST_CASE("a = 1/2 table") {
    const std::uint64_t table[5][2] = {{2, 2}, {4, 4}, {16, 8}, {32, 64}, {1024, 128}};
    for (int m = 0; m < 5; ++m) {
        const HannerExpr e = build_dyadic(0.5, m);
        CHECK(e.dim() == (1L << m));
        CHECK(e.counts().num_vertices == BigCount(table[m][0]));
        CHECK(e.counts().num_facets == BigCount(table[m][1]));
    }
}

TEST_CASE("dyadic rule") {
    for (int s = 0; s < 10; ++s) CHECK(dyadic_step_is_product(0.5, s) == (s % 2 == 1));
    CHECK_THROWS(build_dyadic(1.5, 3));
    int products = 0;
    for (int s = 0; s < 400; ++s) products += dyadic_step_is_product(0.25, s) ? 1 : 0;
    CHECK(products == 100);
}

TEST_CASE("counts of every small tree match enumeration") {
    for (int d = 1; d <= 4; ++d) {
        for (const HannerExpr& e : all_trees(d)) {
            CAPTURE(e.to_string());
            const PolytopePair pp = materialize(e);
            CHECK(BigCount(facet_enum(pp.v).size()) == e.counts().num_facets);
            CHECK(BigCount(vertex_enum(pp.h).size()) == e.counts().num_vertices);
            CHECK(circumradius(pp.v) == doctest::Approx(e.circumradius()));
            CHECK(inradius(pp.h) == doctest::Approx(e.inradius()));
        }
    }
}

TEST_CASE("f-vector matches the face lattice") {
    for (int d = 1; d <= 4; ++d) {
        for (const HannerExpr& e : all_trees(d)) {
            CAPTURE(e.to_string());
            const std::vector<mpz_class> f = f_vector(e);
            REQUIRE(f.size() == static_cast<std::size_t>(d + 1));
            if (d == 1) continue;
            const std::vector<long> lattice = face_counts(canonicalize_h(materialize(e).h));
            for (int k = 0; k <= d; ++k) CHECK(f[static_cast<std::size_t>(k)] == lattice[static_cast<std::size_t>(k)]);
        }
    }
    const std::vector<mpz_class> sq = f_vector(HannerExpr::product(HannerExpr::leaf(), HannerExpr::leaf()));
    CHECK(sq == std::vector<mpz_class>{4, 4, 1});
}

TEST_CASE("duality of the expression") {
    const HannerExpr e = build_dyadic(0.25, 3);
    CHECK(e.dual().counts().num_vertices == e.counts().num_facets);
    CHECK(e.dual().counts().num_facets == e.counts().num_vertices);
    CHECK(e.dual().dual() == e);
    CHECK(e.dual().circumradius() * e.inradius() == doctest::Approx(1.0));
}

TEST_CASE("general n and padding") {
    for (long n : {3L, 5L, 6L, 7L, 12L}) CHECK(build_general_n(n, 0.5).dim() == n);
    const PaddedBody b = build_padded(GrowthFn{GrowthFn::Log{}}, 1000);
    CHECK(b.block_dim == 36);
    CHECK(b.copies == 27);
    CHECK(b.k == 972);
    CHECK(b.expr.dim() == 972);
}

TEST_CASE("dyadic family growth") {
    const FamilyReport fam = dyadic_family(0.5, 40);
    REQUIRE(fam.rows.size() == 41);
    for (const auto& r : fam.rows) {
        const double ref = std::pow(2.0, r.m / 2.0) * std::log(2.0);
        CHECK(r.logV <= 4 * ref);
        CHECK(r.logF >= ref / 4);
    }
    // Exact closed form on even m: log2|V| = 3 * 2^{m/2} - 2.
    for (int m = 2; m <= 40; m += 2) {
        CHECK(fam.rows[static_cast<std::size_t>(m)].logV / std::log(2.0) ==
              doctest::Approx(3.0 * std::pow(2.0, m / 2) - 2.0));
    }
}

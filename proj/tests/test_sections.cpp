#include <doctest.h>

#include <cmath>

#include "flmlab/enumerate.hpp"
#include "flmlab/sections.hpp"

using namespace flmlab;

TEST_CASE("random subspaces are orthonormal and reproducible") {
    const SubspaceBasis b = random_subspace(7, 3, 12);
    CHECK((b.columns.transpose() * b.columns - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
    CHECK(random_subspace(7, 3, 12).columns == b.columns);
    CHECK(random_subspace(7, 3, 13).columns != b.columns);
    CHECK_THROWS(random_subspace(3, 4, 1));
}

TEST_CASE("coordinate section of the cube") {
    SubspaceBasis b;
    b.n = 3;
    b.k = 2;
    b.columns = Eigen::MatrixXd::Zero(3, 2);
    b.columns(0, 0) = 1.0;
    b.columns(1, 1) = 1.0;
    const CanonicalH s = section(make_cube(3).h, b);
    CHECK(s.h.size() == 4);
    CHECK(s.v.size() == 4);
    const VPolytope p = project_v(make_cube(3).v, b);
    CHECK(p.size() == 4);
}

TEST_CASE("section and projection are polar") {
    const PolytopePair cross = make_cross(4);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SubspaceBasis b = random_subspace(4, 2, seed);
        const CanonicalH s = section(cross.h, b);
        const VPolytope proj = project_v(make_cube(4).v, b);
        CHECK(point_set_distance(dualize(s.h).vertices(), proj.vertices()) < 1e-8);
    }
}

TEST_CASE("summaries") {
    const Summary3 s = summarize({3.0, 1.0, 2.0, 10.0});
    CHECK(s.min == 1.0);
    CHECK(s.median == 2.5);
    CHECK(s.max == 10.0);
}

TEST_CASE("cross-polytope sections") {
    const SectionStats st = cross_section_experiment(3, 6, 42);
    CHECK(st.trials.size() == 6);
    CHECK(st.pass_rate == 1.0);
    for (const auto& t : st.trials) {
        CHECK(t.F <= 64u);
        CHECK(t.R <= 1.0 + 1e-9);
        CHECK(t.r >= 1.0 / std::sqrt(6.0) - 1e-12);
    }
    // Same seed, same trials.
    const SectionStats again = cross_section_experiment(3, 6, 42);
    CHECK(again.trials[4].r == st.trials[4].r);
}

TEST_CASE("simplex mean width") {
    const MCEstimate m = simplex_mstar(8, 20000, 3);
    const double ratio = m.mean / std::sqrt(8 * std::log(8.0));
    CHECK(ratio > 0.5);
    CHECK(ratio < 3.0);
    const SimplexSectionReport r = simplex_section_experiment(6, GrowthFn{GrowthFn::Constant{2.0}}, 4, 5, 5000);
    CHECK(r.stats.k == 4);
    CHECK(r.stats.pass_rate == 1.0);
}

TEST_CASE("low M* sections of the ball") {
    const LowMStarReport r = low_mstar_check(SectionBody::ball(6), 0.5, 3, 1, 2000);
    // Every section of the ball has diameter 2.
    CHECK(r.stats.diam.max == doctest::Approx(2.0));
    CHECK(r.constant.max == doctest::Approx(2.0 * std::sqrt(0.5)));
}

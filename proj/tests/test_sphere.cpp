#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "flmlab/hanner.hpp"
#include "flmlab/parallel.hpp"
#include "flmlab/polytope.hpp"
#include "flmlab/random.hpp"
#include "flmlab/sphere.hpp"

using namespace flmlab;

TEST_CASE("sphere samples") {
    CHECK(sample_sphere(1, 3, 0).cwiseAbs()(0) == 1.0);
    double m1 = 0.0, m2 = 0.0;
    const int N = 100000, n = 7;
    for (int i = 0; i < N; ++i) {
        const Vector x = sample_sphere(n, 11, static_cast<std::uint64_t>(i));
        CHECK(std::fabs(x.norm() - 1.0) < 1e-12);
        m1 += x(0);
        m2 += x(0) * x(0);
    }
    CHECK(std::fabs(m1 / N) < 3.0 / std::sqrt(N));
    CHECK(std::fabs(m2 / N - 1.0 / n) < 3.0 * std::sqrt(2.0 / (n * n * N)));
    CHECK(sample_sphere(5, 1, 9) == sample_sphere(5, 1, 9));
    CHECK(sample_sphere(5, 1, 9) != sample_sphere(5, 2, 9));
}

TEST_CASE("seed derivation") {
    // FNV-1a of "" and "a" (published test vectors).
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(derive_seed(5, "x", 1) == splitmix64(fnv1a64("x:1") ^ 5));
    CHECK(derive_seed(5, "x", 1) != derive_seed(5, "x", 2));
}

TEST_CASE("incomplete beta against boost") {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.5, 10.0, 24.5}) {
        for (double b : {0.5, 1.0, 3.0}) {
            for (int i = 1; i < 20; ++i) {
                const double x = i / 20.0;
                const double ref = boost::math::ibeta(a, b, x);
                worst = std::max(worst, std::fabs(incomplete_beta(x, a, b) - ref) / std::max(ref, 1e-300));
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("cap measure") {
    CHECK(cap_measure_exact(3, 0.5) == doctest::Approx(0.25));
    for (double t : {0.0, 0.1, 0.3, 0.7, 0.99}) CHECK(cap_measure_exact(2, t) == doctest::Approx(std::acos(t) / std::numbers::pi));
    CHECK(cap_measure_exact(10, 0.0) == doctest::Approx(0.5));
    CHECK(cap_measure_exact(10, -0.2) == doctest::Approx(1.0 - cap_measure_exact(10, 0.2)));
    // MC frequency at n = 20, t = 0.3.
    const double exact = cap_measure_exact(20, 0.3);
    CHECK(exact <= std::exp(-0.9));
    const MCEstimate f = mc_average([](const Vector& x) { return x(0) >= 0.3 ? 1.0 : 0.0; }, 20, 200000, 4);
    CHECK(std::fabs(f.mean - exact) <= 3 * f.std_error);
    CHECK_THROWS(cap_measure_exact(5, 1.5));
}

TEST_CASE("Monte Carlo M and M*") {
    // Ball: both averages are 1.
    const MCEstimate b = mc_mean_width([](const Vector& x) { return x.norm(); }, 6, 1000, 1);
    CHECK(b.mean == doctest::Approx(1.0));
    CHECK(b.std_error == doctest::Approx(0.0));
    // Cube [-1,1]^n: M* = E |theta|_1 = n E|theta_1|, exact via the marginal.
    const int n = 5;
    const PolytopePair cube = make_cube(n);
    const MCEstimate ms = mc_mean_width([&](const Vector& x) { return support(cube.v, x); }, n, 100000, 3);
    const double exact = n * std::tgamma(n / 2.0) / (std::sqrt(std::numbers::pi) * std::tgamma((n + 1) / 2.0));
    CHECK(std::fabs(ms.mean - exact) <= 3.5 * ms.std_error);
    const MMStarEstimate mm = mc_m_mstar([&](const Vector& x) { return gauge(cube.h, x); },
                                         [&](const Vector& x) { return support(cube.v, x); }, n, 50000, 5);
    CHECK(mm.product >= 1.0);
    CHECK(mm.product == doctest::Approx(mm.m.mean * mm.mstar.mean));
}

TEST_CASE("results do not depend on the worker count") {
    auto f = [](const Vector& x) { return std::fabs(x(0)) + x(1) * x(1); };
    setenv("FLMLAB_THREADS", "1", 1);
    const MCEstimate a = mc_average(f, 4, 30000, 99);
    setenv("FLMLAB_THREADS", "3", 1);
    const MCEstimate b = mc_average(f, 4, 30000, 99);
    unsetenv("FLMLAB_THREADS");
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("vertex bound for mean width") {
    const PolytopePair cross = make_cross(16);
    const Lemma22Report r = lemma22_check(cross.v, 100000, 8);
    CHECK(r.hypothesis_ok);
    CHECK(r.pass);
    CHECK(r.rhs == doctest::Approx(std::sqrt(3 * std::log(32.0) / 16) + 1 / std::sqrt(32.0)));
    // Cube in dimension 4 violates log|V| < n/3; reported, not thrown.
    const Lemma22Report c = lemma22_check(make_cube(4).v, 1000, 8);
    CHECK_FALSE(c.hypothesis_ok);
}

TEST_CASE("FLM certificate") {
    const FlmReport c = flm_certificate(FCount{BigCount::pow2(8), BigCount(16), 8}, 1.0, std::sqrt(8.0));
    CHECK(c.certificate == doctest::Approx(8 * std::log(2.0) * std::log(16.0) * 8 / 64));
    CHECK(c.alpha == doctest::Approx(2.0));
    CHECK_THROWS(flm_certificate(FCount{BigCount(4), BigCount(4), 2}, 2.0, 1.0));
    const HannerExpr e = build_dyadic(0.5, 3);
    const FlmReport h = flm_certificate(e.counts(), e.inradius(), e.circumradius());
    CHECK(h.certificate >= 1.0 / 9.0);
}

TEST_CASE("refined FLM check") {
    const int n = 9;
    const RefinedFlmReport r = refined_flm_check(FCount{BigCount(18), BigCount::pow2(9), n}, 1.0, 3.0);
    CHECK(r.alpha == doctest::Approx(512.0 / 9));
    CHECK(r.ratio > 0.0);
    CHECK_THROWS(refined_flm_check(FCount{BigCount(18), BigCount::pow2(9), n}, 1.0, 4.0));
}

#include <doctest.h>

#include <cmath>

#include "flmlab/geomflm.hpp"
#include "flmlab/random.hpp"

using namespace flmlab;

namespace {

// h_K as max(h_A, apex * theta_n) with h_A from the inf-convolution
// min_s [rho |theta - s e_1| + |s|] of the ball and slab supports, minimised
// over a fine grid then refined.
double support_oracle(const GeomBody& k, const Vector& th) {
    const double rho = k.ball_radius();
    auto g = [&](double s) {
        Vector d = th;
        d(0) -= s;
        return rho * d.norm() + std::fabs(s);
    };
    const double span = std::fabs(th(0)) + 1.0;
    double best_s = 0.0, best = g(0.0);
    for (int i = -2000; i <= 2000; ++i) {
        const double s = span * i / 2000.0;
        if (g(s) < best) best = g(s), best_s = s;
    }
    double lo = best_s - span / 1000, hi = best_s + span / 1000;
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (g(m1) < g(m2)) hi = m2;
        else lo = m1;
    }
    return std::max(std::min(best, g(0.5 * (lo + hi))), k.apex() * th(k.n() - 1));
}

Vector unit(int n, int i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    return e;
}

} // namespace

TEST_CASE("parameter window") {
    CHECK_THROWS(GeomBody(16, 0.6, 0.6));
    CHECK_THROWS(GeomBody(16, 0.6, 0.05));
    CHECK_THROWS(GeomBody(16, 1.2, 0.5));
    CHECK_NOTHROW(GeomBody(16, 0.6, 0.4));
}

TEST_CASE("support function witnesses") {
    const int n = 64;
    const GeomBody k(n, 0.6, 0.4);
    CHECK(support_K(k, unit(n, n - 1)) == doctest::Approx(std::pow(n, 0.6)));
    CHECK(support_K(k, unit(n, 0)) == doctest::Approx(1.0));
    CHECK(support_K(k, unit(n, 1)) == doctest::Approx(std::pow(n, 0.4)));
    CHECK_THROWS(support_K(k, Vector::Ones(n)));
}

TEST_CASE("support function against the inf-convolution") {
    for (int n : {8, 32}) {
        for (double beta : {0.4, 0.2, 0.15}) {
            const GeomBody k(n, 0.6, beta);
            for (std::uint64_t i = 0; i < 40; ++i) {
                const Vector th = sample_sphere(n, 77, i);
                CHECK(support_K(k, th) == doctest::Approx(support_oracle(k, th)).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("gauge is dual to support") {
    const int n = 16;
    const GeomBody k(n, 0.6, 0.4);
    CHECK(gauge_K(k, std::pow(n, 0.6) * unit(n, n - 1)) == doctest::Approx(1.0));
    CHECK(gauge_K(k, std::pow(n, 0.4) * unit(n, 1)) == doctest::Approx(1.0));
    CHECK(gauge_K(k, unit(n, 0)) == doctest::Approx(1.0));
    CHECK(gauge_K(k, 0.3 * std::pow(n, 0.6) * unit(n, n - 1)) == doctest::Approx(0.3));
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Vector x = sample_sphere(n, 5, i);
        const double g = gauge_K(k, x);
        const Vector y = x / g; // boundary point
        // <y, theta> <= h_K(theta) for random directions, with equality approached.
        double worst = -1e300;
        for (std::uint64_t j = 0; j < 50; ++j) {
            const Vector th = sample_sphere(n, 6 + i, j);
            worst = std::max(worst, y.dot(th) - support_K(k, th));
        }
        CHECK(worst <= 1e-9);
        // Homogeneity.
        CHECK(gauge_K(k, 2.5 * x) == doctest::Approx(2.5 * g).epsilon(1e-10));
    }
}

TEST_CASE("dv identity and slab measure") {
    const GeomBody k(32, 0.6, 0.4);
    const DvReport d = dv_report(k, 20000, 3);
    const double mm = d.M.mean * d.Mstar.mean;
    CHECK(d.eq4 == doctest::Approx(mm * mm));
    CHECK(d.mm_pass);
    for (int n : {4, 16, 256}) {
        for (double beta : {0.1, 0.3, 0.45}) CHECK(slab_cap_measure(n, beta).holds);
    }
    CHECK_THROWS(slab_cap_measure(16, 0.5));
}

TEST_CASE("geometric FLM parameters") {
    CHECK_THROWS(prop_geometric_flm(0.8, 0.5, 0.4, {16, 32, 64}, 100, 1));
    CHECK_THROWS(prop_geometric_flm(0.1, 1.1, 0.4, {16, 32, 64}, 100, 1));
    const GeomFlmReport r = prop_geometric_flm(0.8, 0.4, 0.4, {16, 32, 64}, 2000, 1);
    CHECK(r.beta == doctest::Approx(0.3));
    CHECK(r.rR_sq_exponent == doctest::Approx(0.8));
}

TEST_CASE("vertex lower bound flags") {
    const Thm43Report t = thm43_check(FCount{BigCount(2 * 64), BigCount::pow2(64), 64}, 1.0 / 8.0, 1.0);
    CHECK(t.v_ratio == doctest::Approx(std::log(128.0)));
    CHECK_FALSE(t.flagged);
    CHECK(thm43_check(FCount{BigCount(3), BigCount(3), 64}, 1.0, 1.0).flagged);
}

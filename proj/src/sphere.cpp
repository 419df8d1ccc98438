#include "flmlab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "flmlab/errors.hpp"
#include "flmlab/parallel.hpp"
#include "flmlab/random.hpp"

namespace flmlab {

void sample_sphere_into(int n, std::uint64_t seed, std::uint64_t index, double* out) {
    if (n < 1) throw InvalidArgument("sample_sphere: n must be positive");
    CounterRng rng(seed, index);
    for (;;) {
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            out[i] = rng.normal();
            norm2 += out[i] * out[i];
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < n; ++i) out[i] *= inv;
            return;
        }
    }
}

Vector sample_sphere(int n, std::uint64_t seed, std::uint64_t index) {
    Vector v(n);
    sample_sphere_into(n, seed, index, v.data());
    return v;
}

std::vector<Vector> sample_sphere_batch(int n, std::uint64_t seed, std::uint64_t count) {
    std::vector<Vector> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(sample_sphere(n, seed, i));
    return out;
}

namespace {

double beta_cf(double x, double a, double b) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 100000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw NumericalFailure("incomplete_beta: continued fraction did not converge");
}

Moments single(const DirectionFn& f, int n, std::uint64_t samples, std::uint64_t seed) {
    return block_moments(samples, [&](std::uint64_t i) {
        thread_local Vector theta;
        theta.resize(n);
        sample_sphere_into(n, seed, i, theta.data());
        const double v = f(theta);
        if (!std::isfinite(v)) throw NumericalFailure("Monte Carlo oracle returned a non-finite value");
        return v;
    });
}

MCEstimate finish(const Moments& m, std::uint64_t seed) {
    MCEstimate e;
    e.samples = m.count;
    e.seed = seed;
    const double cnt = static_cast<double>(m.count);
    e.mean = m.sum / cnt;
    if (m.count > 1) {
        const double var = std::max(0.0, (m.sum_sq - cnt * e.mean * e.mean) / (cnt - 1.0));
        e.std_error = std::sqrt(var / cnt);
    }
    return e;
}

} // namespace

double incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete_beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double cap_measure_exact(int n, double t) {
    if (n < 2) throw InvalidArgument("cap_measure_exact: n must be at least 2");
    if (!(t >= -1.0 && t <= 1.0)) throw InvalidArgument("cap_measure_exact: t must lie in [-1, 1]");
    if (t < 0.0) return 1.0 - cap_measure_exact(n, -t);
    return 0.5 * incomplete_beta((1.0 - t) * (1.0 + t), 0.5 * (n - 1), 0.5);
}

MCEstimate mc_average(const DirectionFn& f, int n, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidArgument("Monte Carlo estimate needs at least one sample");
    return finish(single(f, n, samples, seed), seed);
}

MCEstimate mc_mean_width(const DirectionFn& support_fn, int n, std::uint64_t samples, std::uint64_t seed) {
    return mc_average(support_fn, n, samples, seed);
}

MCEstimate mc_M(const DirectionFn& gauge_fn, int n, std::uint64_t samples, std::uint64_t seed) {
    return mc_average(gauge_fn, n, samples, seed);
}

MMStarEstimate mc_m_mstar(const DirectionFn& gauge_fn, const DirectionFn& support_fn, int n,
                          std::uint64_t samples, std::uint64_t seed) {
    if (samples < 2) throw InvalidArgument("mc_m_mstar needs at least two samples");
    const auto mom = block_moments_multi(samples, 3, [&](std::uint64_t i, double* out) {
        thread_local Vector theta;
        theta.resize(n);
        sample_sphere_into(n, seed, i, theta.data());
        out[0] = gauge_fn(theta);
        out[1] = support_fn(theta);
        if (!std::isfinite(out[0]) || !std::isfinite(out[1])) {
            throw NumericalFailure("Monte Carlo oracle returned a non-finite value");
        }
        out[2] = out[0] * out[1];
    });
    MMStarEstimate r;
    r.m = finish(mom[0], seed);
    r.mstar = finish(mom[1], seed);
    r.product = r.m.mean * r.mstar.mean;
    const double cnt = static_cast<double>(samples);
    const double cov = (mom[2].sum - cnt * r.m.mean * r.mstar.mean) / (cnt - 1.0);
    const double var = r.mstar.mean * r.mstar.mean * r.m.std_error * r.m.std_error +
                       r.m.mean * r.m.mean * r.mstar.std_error * r.mstar.std_error +
                       2.0 * r.m.mean * r.mstar.mean * cov / cnt;
    r.product_err = std::sqrt(std::max(0.0, var));
    return r;
}

Lemma22Report lemma22_check(const DirectionFn& support_fn, int n, const BigCount& num_vertices, double R,
                            std::uint64_t samples, std::uint64_t seed, double sigmas) {
    if (num_vertices.is_zero()) throw InvalidArgument("lemma22_check: vertex count is zero");
    Lemma22Report rep;
    rep.n = n;
    rep.R = R;
    rep.logV = num_vertices.log();
    rep.hypothesis_ok = rep.logV < n / 3.0;
    rep.rhs = R * (std::sqrt(3.0 * rep.logV / n) + std::exp(-0.5 * rep.logV));
    rep.lhs = mc_mean_width(support_fn, n, samples, seed);
    rep.pass = rep.lhs.mean - sigmas * rep.lhs.std_error <= rep.rhs;
    return rep;
}

Lemma22Report lemma22_check(const VPolytope& p, std::uint64_t samples, std::uint64_t seed, double sigmas) {
    return lemma22_check([&p](const Vector& x) { return support(p, x); }, p.dim(), BigCount(p.size()),
                         circumradius(p), samples, seed, sigmas);
}

FlmReport flm_certificate(const FCount& counts, double r, double R) {
    if (counts.num_vertices.is_zero() || counts.num_facets.is_zero() || counts.dim < 1) {
        throw InvalidArgument("flm_certificate: missing counts");
    }
    if (!(r > 0.0) || !(R >= r * (1.0 - 1e-12))) throw InvalidArgument("flm_certificate: need 0 < r <= R");
    FlmReport rep;
    rep.n = counts.dim;
    rep.logV = counts.num_vertices.log();
    rep.logF = counts.num_facets.log();
    rep.r = r;
    rep.R = R;
    const double n = static_cast<double>(rep.n);
    rep.certificate = rep.logV * rep.logF * (R / r) * (R / r) / (n * n);
    rep.alpha = std::exp(rep.logF - std::log(n));
    return rep;
}

FlmReport flm_certificate(const FCount& counts, double r, double R, const DirectionFn& gauge_fn,
                          const DirectionFn& support_fn, std::uint64_t samples, std::uint64_t seed,
                          double sigmas) {
    FlmReport rep = flm_certificate(counts, r, R);
    rep.mm = mc_m_mstar(gauge_fn, support_fn, static_cast<int>(counts.dim), samples, seed);
    rep.mm_pass = rep.mm->product >= 1.0 - sigmas * rep.mm->product_err;
    return rep;
}

RefinedFlmReport refined_flm_check(const FCount& counts, double r, double R, double tol) {
    if (!(r > 0.0) || !(R > 0.0)) throw InvalidArgument("refined_flm_check: radii must be positive");
    const double n = static_cast<double>(counts.dim);
    if (R / r > std::sqrt(n) * (1.0 + tol)) {
        throw DegenerateInput("refined_flm_check: R/r = " + std::to_string(R / r) +
                              " exceeds sqrt(n); the body cannot be normalised to B <= P <= sqrt(n) B");
    }
    RefinedFlmReport rep;
    rep.n = counts.dim;
    rep.logV = counts.num_vertices.log();
    rep.logF = counts.num_facets.log();
    rep.alpha = std::exp(rep.logF - std::log(n));
    const double log1p_alpha =
        std::isfinite(rep.alpha) ? std::log1p(rep.alpha) : rep.logF - std::log(n);
    const double scale = n * rep.logF / log1p_alpha; // log(alpha n) = log|F|
    rep.ratio = rep.logV * rep.logF / scale;
    rep.ratio_rR = rep.logV * rep.logF * (R / r) * (R / r) / (n * scale);
    return rep;
}

} // namespace flmlab

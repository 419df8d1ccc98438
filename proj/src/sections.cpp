#include "flmlab/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flmlab/errors.hpp"
#include "flmlab/parallel.hpp"
#include "flmlab/random.hpp"

namespace flmlab {

SubspaceBasis random_subspace(int n, int k, std::uint64_t seed) {
    if (k < 1 || k > n) throw InvalidArgument("random_subspace: need 1 <= k <= n");
    for (std::uint64_t attempt = 0;; ++attempt) {
        CounterRng rng(seed, attempt);
        Eigen::MatrixXd g(n, k);
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        const Eigen::MatrixXd& packed = qr.matrixQR();
        bool full_rank = true;
        for (int j = 0; j < k; ++j) {
            if (std::fabs(packed(j, j)) < 1e-10) full_rank = false;
        }
        if (!full_rank) continue;
        SubspaceBasis b;
        b.n = n;
        b.k = k;
        b.seed = seed;
        b.columns = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
        for (int j = 0; j < k; ++j) {
            if (packed(j, j) < 0.0) b.columns.col(j) *= -1.0;
        }
        return b;
    }
}

CanonicalH section(const HPolytope& p, const SubspaceBasis& b, const EnumLimits& limits) {
    if (p.dim() != b.n) throw DimensionMismatch("section: body and subspace dimensions differ");
    const PointSet images = p.normals() * b.columns;
    const double scale = images.rowwise().norm().maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < images.rows(); ++i) {
        if (images.row(i).norm() > 1e-12 * (1.0 + scale)) keep.push_back(i);
    }
    if (static_cast<int>(keep.size()) <= b.k) throw UnboundedBody("section: too few halfspaces survive");
    PointSet rows(static_cast<Eigen::Index>(keep.size()), b.k);
    for (std::size_t i = 0; i < keep.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = images.row(keep[i]);
    return canonicalize_h(HPolytope(b.k, std::move(rows)), limits);
}

HPolytope section_h(const HPolytope& p, const SubspaceBasis& b, const EnumLimits& limits) {
    return section(p, b, limits).h;
}

VPolytope project_v(const VPolytope& p, const SubspaceBasis& b) {
    if (p.dim() != b.n) throw DimensionMismatch("project_v: body and subspace dimensions differ");
    const PointSet images = p.vertices() * b.columns;
    const auto idx = extreme_indices(images);
    PointSet out(static_cast<Eigen::Index>(idx.size()), b.k);
    for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = images.row(static_cast<Eigen::Index>(idx[i]));
    return VPolytope(b.k, std::move(out));
}

Summary3 summarize(std::vector<double> values) {
    if (values.empty()) return {};
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size();
    const double med = m % 2 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
    return {values.front(), med, values.back()};
}

namespace {

double diameter(const PointSet& pts) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < pts.rows(); ++j) best = std::max(best, (pts.row(i) - pts.row(j)).squaredNorm());
    }
    return std::sqrt(best);
}

struct Measured {
    CanonicalH sec;
    SectionTrial t;
};

Measured measure(const HPolytope& body, int k, std::uint64_t seed, const EnumLimits& limits) {
    const SubspaceBasis b = random_subspace(body.dim(), k, seed);
    CanonicalH sec = section(body, b, limits);
    SectionTrial t;
    t.V = sec.v.size();
    t.F = sec.h.size();
    t.r = inradius(sec.h);
    t.R = circumradius(sec.v);
    t.diam = diameter(sec.v.vertices());
    return {std::move(sec), t};
}

// Runs one trial per index with seeds derived from (name, index). Failures
// from degenerate draws are retried with the next seed; limit errors are not.
template <class Fn>
SectionStats run_trials(const std::string& name, int n, int k, int trials, std::uint64_t seed, Fn&& fn) {
    if (trials < 1) throw InvalidArgument(name + ": trials must be positive");
    SectionStats st;
    st.experiment = name;
    st.n = n;
    st.k = k;
    st.trials.resize(static_cast<std::size_t>(trials));
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
        const std::uint64_t base = derive_seed(seed, name, i);
        for (int attempt = 0;; ++attempt) {
            try {
                SectionTrial t = fn(base + static_cast<std::uint64_t>(attempt));
                t.trial = static_cast<int>(i);
                t.seed = base + static_cast<std::uint64_t>(attempt);
                t.redraws = attempt;
                st.trials[i] = t;
                return;
            } catch (const LimitExceeded&) {
                throw;
            } catch (const Error&) {
                if (attempt >= 8) throw;
            }
        }
    });
    std::vector<double> V, F, r, R, diam;
    int passed = 0;
    for (const auto& t : st.trials) {
        V.push_back(static_cast<double>(t.V));
        F.push_back(static_cast<double>(t.F));
        r.push_back(t.r);
        R.push_back(t.R);
        diam.push_back(t.diam);
        passed += t.pass ? 1 : 0;
    }
    st.V = summarize(V);
    st.F = summarize(F);
    st.r = summarize(r);
    st.R = summarize(R);
    st.diam = summarize(diam);
    st.pass_rate = static_cast<double>(passed) / trials;
    return st;
}

double fraction(const std::vector<SectionTrial>& ts, const std::function<bool(const SectionTrial&)>& pred) {
    if (ts.empty()) return 0.0;
    return static_cast<double>(std::count_if(ts.begin(), ts.end(), pred)) / static_cast<double>(ts.size());
}

} // namespace

SectionStats cross_section_experiment(int n, int trials, std::uint64_t seed, const EnumLimits& limits) {
    if (n < 1 || n > limits.max_dim) throw LimitExceeded("cross_section_experiment: n outside enumeration limits");
    const HPolytope body = make_cross(2 * n).h;
    const double facet_bound = std::ldexp(1.0, 2 * n);
    const double r_floor = 1.0 / std::sqrt(2.0 * n);
    return run_trials("cross-section", 2 * n, n, trials, seed, [&](std::uint64_t s) {
        SectionTrial t = measure(body, n, s, limits).t;
        t.bound = facet_bound;
        t.pass = static_cast<double>(t.F) <= facet_bound && t.R <= 1.0 + 1e-9 && t.r >= r_floor - 1e-12;
        return t;
    });
}

MCEstimate simplex_mstar(int n, std::uint64_t samples, std::uint64_t seed) {
    const VPolytope v = make_simplex(n).v;
    return mc_mean_width([&v](const Vector& x) { return support(v, x); }, n, samples, seed);
}

SimplexSectionReport simplex_section_experiment(int n, const GrowthFn& f, int trials, std::uint64_t seed,
                                                std::uint64_t mstar_samples, const EnumLimits& limits) {
    const double fn = f(n);
    const int drop = static_cast<int>(std::floor(fn));
    const int k = n - drop;
    if (drop < 0 || k < 2) throw InvalidArgument("simplex_section_experiment: need n - floor(f(n)) >= 2");
    if (n > limits.max_dim) throw LimitExceeded("simplex_section_experiment: n exceeds enum.max_dim");
    const HPolytope body = make_simplex(n).h;
    SimplexSectionReport rep;
    rep.mstar = simplex_mstar(n, mstar_samples, derive_seed(seed, "simplex-section-mstar", 0));
    rep.radius_prediction = std::sqrt(n / std::max(fn, 1e-300)) * rep.mstar.mean;
    rep.log_binomial = std::lgamma(n + 1.0) - std::lgamma(drop + 1.0) - std::lgamma(n - drop + 1.0);
    rep.stats = run_trials("simplex-section", n, k, trials, seed, [&](std::uint64_t s) {
        SectionTrial t = measure(body, k, s, limits).t;
        t.bound = rep.radius_prediction;
        t.pass = t.F <= static_cast<std::size_t>(n + 1) && t.r >= 1.0 - 1e-9;
        return t;
    });
    rep.radius_within_prediction =
        fraction(rep.stats.trials, [&](const SectionTrial& t) { return t.R <= rep.radius_prediction; });
    rep.logV_within_binomial = fraction(rep.stats.trials, [&](const SectionTrial& t) {
        return std::log(static_cast<double>(t.V)) <= rep.log_binomial + 1e-12;
    });
    return rep;
}

HannerSectionReport hanner_section_experiment(double a, int n, HannerSectionMode mode, int trials,
                                              std::uint64_t seed, std::uint64_t mstar_samples,
                                              const EnumLimits& limits) {
    if (n < 1) throw InvalidArgument("hanner_section_experiment: n must be positive");
    const int N = 2 * n;
    int k = n;
    if (mode.delta) {
        const double d = *mode.delta;
        if (!(d > 0.0 && d < 1.0)) throw InvalidArgument("hanner_section_experiment: delta must lie in (0, 1)");
        k = static_cast<int>(std::floor(N - std::pow(static_cast<double>(N), d)));
        if (k < 2) throw InvalidArgument("hanner_section_experiment: section dimension below 2");
    }
    const HannerExpr expr = build_general_n(N, a);
    const PolytopePair raw = materialize(expr, limits);
    const PolytopePair body = scaled(raw, 1.0 / expr.inradius());
    HannerSectionReport rep;
    rep.body = expr.to_string();
    rep.body_F = body.h.size();
    rep.face_total = 0;
    for (const auto& c : f_vector(expr)) rep.face_total += c;
    rep.log_face_rate = std::log(rep.face_total.get_d()) / N;
    rep.mstar = mc_mean_width([&](const Vector& x) { return support(body.v, x); }, N, mstar_samples,
                              derive_seed(seed, "hanner-section-mstar", 0));
    const double faces = rep.face_total.get_d();
    rep.stats = run_trials("hanner-section", N, k, trials, seed, [&](std::uint64_t s) {
        SectionTrial t = measure(body.h, k, s, limits).t;
        t.bound = 4.0 * rep.mstar.mean;
        t.pass = t.F <= rep.body_F && static_cast<double>(t.V) <= faces;
        return t;
    });
    rep.radius_ratio_le4 = fraction(rep.stats.trials, [&](const SectionTrial& t) { return t.R <= 4.0 * rep.mstar.mean; });
    return rep;
}

SectionBody SectionBody::ball(int n) {
    SectionBody b;
    b.n = n;
    b.name = "ball:" + std::to_string(n);
    return b;
}

SectionBody SectionBody::polytope(HPolytope h, std::string name) {
    SectionBody b;
    b.n = h.dim();
    b.h = std::move(h);
    b.name = std::move(name);
    return b;
}

LowMStarReport low_mstar_check(const SectionBody& body, double lambda, int trials, std::uint64_t seed,
                               std::uint64_t mstar_samples, const EnumLimits& limits) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw InvalidArgument("low_mstar_check: lambda must lie in (0, 1]");
    const int n = body.n;
    const int k = std::max(1, static_cast<int>(std::ceil(lambda * n - 1e-9)));
    const double shrink = std::sqrt(1.0 - lambda);
    LowMStarReport rep;
    rep.lambda = lambda;
    if (!body.h) {
        rep.mstar = MCEstimate{1.0, 0.0, 0, seed};
        rep.stats = run_trials("low-mstar", n, k, trials, seed, [&](std::uint64_t s) {
            random_subspace(n, k, s);
            SectionTrial t;
            t.r = 1.0;
            t.R = 1.0;
            t.diam = 2.0;
            t.bound = t.diam * shrink;
            t.pass = t.diam <= 2.0;
            return t;
        });
    } else {
        const VPolytope verts = vertex_enum(*body.h, limits);
        const double R_body = circumradius(verts);
        rep.mstar = mc_mean_width([&](const Vector& x) { return support(verts, x); }, n, mstar_samples,
                                  derive_seed(seed, "low-mstar-mstar", 0));
        rep.stats = run_trials("low-mstar", n, k, trials, seed, [&](std::uint64_t s) {
            SectionTrial t = measure(*body.h, k, s, limits).t;
            t.bound = t.diam * shrink / rep.mstar.mean;
            t.pass = t.diam <= 2.0 * R_body + 1e-9;
            return t;
        });
    }
    std::vector<double> consts;
    for (const auto& t : rep.stats.trials) consts.push_back(t.bound);
    rep.constant = summarize(consts);
    return rep;
}

std::vector<Example4Row> example4_sweep(const std::vector<int>& n_list, int trials, std::uint64_t seed,
                                        const EnumLimits& limits) {
    std::vector<Example4Row> rows;
    for (int n : n_list) {
        if (n < 3) throw InvalidArgument("example4_sweep: n must be at least 3");
        const int drop = static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
        const int k = n - drop;
        if (k < 2) throw InvalidArgument("example4_sweep: section dimension below 2");
        if (n > limits.max_dim) throw LimitExceeded("example4_sweep: n exceeds enum.max_dim");
        const HPolytope body = make_simplex(n).h;
        std::vector<double> ratio, logV, logF;
        const SectionStats st = run_trials("example4-sweep:" + std::to_string(n), n, k, trials, seed,
                                           [&](std::uint64_t s) {
                                               SectionTrial t = measure(body, k, s, limits).t;
                                               t.bound = t.R / t.r;
                                               t.pass = true;
                                               return t;
                                           });
        for (const auto& t : st.trials) {
            ratio.push_back(t.R / t.r);
            logV.push_back(std::log(static_cast<double>(t.V)));
            logF.push_back(std::log(static_cast<double>(t.F)));
        }
        Example4Row row;
        row.n = n;
        row.k = k;
        row.median_R_over_r = summarize(ratio).median;
        row.median_logV = summarize(logV).median;
        row.logF = summarize(logF).median;
        const double ln = std::log(static_cast<double>(n));
        row.scaled_ratio = row.median_R_over_r * ln / n;
        row.scaled_product = row.median_logV * row.logF / (ln * ln);
        rows.push_back(row);
    }
    return rows;
}

} // namespace flmlab

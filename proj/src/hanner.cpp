#include "flmlab/hanner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace flmlab {

HannerExpr HannerExpr::leaf() {
    static const auto node = std::make_shared<const Node>(
        Node{Kind::Leaf, nullptr, nullptr, 1, FCount{BigCount(2), BigCount(2), 1}, 1.0, 1.0});
    return HannerExpr(node);
}

HannerExpr HannerExpr::combine(Kind k, const HannerExpr& l, const HannerExpr& r) {
    const FCount& a = l.counts();
    const FCount& b = r.counts();
    Node n{k, l.node_, r.node_, l.dim() + r.dim(), {}, 0.0, 0.0};
    n.counts.dim = n.dim;
    if (k == Kind::Product) {
        n.counts.num_vertices = a.num_vertices * b.num_vertices;
        n.counts.num_facets = a.num_facets + b.num_facets;
        n.circumradius = std::hypot(l.circumradius(), r.circumradius());
        n.inradius = std::min(l.inradius(), r.inradius());
    } else {
        n.counts.num_vertices = a.num_vertices + b.num_vertices;
        n.counts.num_facets = a.num_facets * b.num_facets;
        n.circumradius = std::max(l.circumradius(), r.circumradius());
        n.inradius = 1.0 / std::hypot(1.0 / l.inradius(), 1.0 / r.inradius());
    }
    return HannerExpr(std::make_shared<const Node>(std::move(n)));
}

HannerExpr HannerExpr::product(const HannerExpr& l, const HannerExpr& r) { return combine(Kind::Product, l, r); }

HannerExpr HannerExpr::free_sum(const HannerExpr& l, const HannerExpr& r) { return combine(Kind::FreeSum, l, r); }

HannerExpr HannerExpr::left() const {
    if (!node_->left) throw InvalidArgument("HannerExpr: a leaf has no children");
    return HannerExpr(node_->left);
}

HannerExpr HannerExpr::right() const {
    if (!node_->right) throw InvalidArgument("HannerExpr: a leaf has no children");
    return HannerExpr(node_->right);
}

HannerExpr HannerExpr::dual() const {
    std::map<const Node*, HannerExpr> memo;
    auto rec = [&](auto&& self, const HannerExpr& e) -> HannerExpr {
        if (e.kind() == Kind::Leaf) return e;
        if (auto it = memo.find(e.node_.get()); it != memo.end()) return it->second;
        const HannerExpr l = self(self, e.left());
        const HannerExpr r = self(self, e.right());
        HannerExpr d = e.kind() == Kind::Product ? free_sum(l, r) : product(l, r);
        memo.emplace(e.node_.get(), d);
        return d;
    };
    return rec(rec, *this);
}

std::string HannerExpr::to_string() const {
    switch (kind()) {
    case Kind::Leaf:
        return "L";
    case Kind::Product:
        return "P(" + left().to_string() + "," + right().to_string() + ")";
    case Kind::FreeSum:
        return "F(" + left().to_string() + "," + right().to_string() + ")";
    }
    return {};
}

bool operator==(const HannerExpr& a, const HannerExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.dim() != b.dim()) return false;
    if (a.kind() == HannerExpr::Kind::Leaf) return true;
    return a.left() == b.left() && a.right() == b.right();
}

bool dyadic_step_is_product(double a, int step) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("dyadic construction needs 0 < a < 1");
    const long target = static_cast<long>(step) + 1;
    const long k0 = static_cast<long>(std::ceil(a * static_cast<double>(target)));
    for (long k = std::max(1L, k0 - 1); k <= k0 + 1; ++k) {
        if (static_cast<long>(std::floor(static_cast<double>(k) / a)) == target) return true;
    }
    return false;
}

HannerExpr build_dyadic(double a, int m) {
    if (!(a > 0.0 && a < 1.0)) throw InvalidArgument("build_dyadic: a must lie in (0, 1)");
    if (m < 0) throw InvalidArgument("build_dyadic: m must be non-negative");
    HannerExpr e = HannerExpr::leaf();
    for (int s = 0; s < m; ++s) {
        e = dyadic_step_is_product(a, s) ? HannerExpr::product(e, e) : HannerExpr::free_sum(e, e);
    }
    return e;
}

HannerExpr build_general_n(long n, double a) {
    if (n < 1) throw InvalidArgument("build_general_n: n must be positive");
    std::vector<HannerExpr> factors;
    for (int bit = 62; bit >= 0; --bit) {
        if ((n >> bit) & 1) factors.push_back(build_dyadic(a, bit));
    }
    HannerExpr e = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) e = HannerExpr::product(e, factors[i]);
    return e;
}

double GrowthFn::operator()(long n) const {
    if (n < 1) throw InvalidArgument("growth function evaluated at n < 1");
    const double x = static_cast<double>(n);
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Log>) {
                return std::log(x);
            } else if constexpr (std::is_same_v<T, Power>) {
                return std::pow(x, f.delta);
            } else if constexpr (std::is_same_v<T, ConstTimesLog>) {
                return f.eps * std::log(x);
            } else if constexpr (std::is_same_v<T, Constant>) {
                return f.value;
            } else {
                const long i = n - f.first;
                if (i < 0 || i >= static_cast<long>(f.values.size())) {
                    throw InvalidArgument("growth table has no entry for n = " + std::to_string(n));
                }
                return f.values[static_cast<std::size_t>(i)];
            }
        },
        form);
}

std::string GrowthFn::name() const {
    return std::visit(
        [](const auto& f) -> std::string {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Log>) return "log";
            else if constexpr (std::is_same_v<T, Power>) return "power(" + std::to_string(f.delta) + ")";
            else if constexpr (std::is_same_v<T, ConstTimesLog>) return "eps_log(" + std::to_string(f.eps) + ")";
            else if constexpr (std::is_same_v<T, Constant>) return "const(" + std::to_string(f.value) + ")";
            else return "table";
        },
        form);
}

PaddedBody build_padded(const GrowthFn& f, long N) {
    if (N < 1) throw InvalidArgument("build_padded: N must be positive");
    const double fn = f(N);
    const long root = static_cast<long>(std::floor(fn));
    if (root < 1 || root * root > N) {
        throw InvalidArgument("build_padded: f(N) = " + std::to_string(fn) + " outside [1, sqrt(N)] for N = " +
                              std::to_string(N));
    }
    PaddedBody out;
    out.block_dim = root * root;
    out.copies = N / out.block_dim;
    out.k = out.block_dim * out.copies;
    const HannerExpr block = build_general_n(out.block_dim, 0.5);
    // Balanced product of `copies` blocks; equal subtrees are shared.
    std::map<long, HannerExpr> memo;
    auto rec = [&](auto&& self, long c) -> HannerExpr {
        if (c == 1) return block;
        if (auto it = memo.find(c); it != memo.end()) return it->second;
        HannerExpr e = HannerExpr::product(self(self, c / 2 + c % 2), self(self, c / 2));
        memo.emplace(c, e);
        return e;
    };
    out.expr = rec(rec, out.copies);
    return out;
}

namespace {

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

} // namespace

std::vector<mpz_class> reverse_proper(const std::vector<mpz_class>& f) {
    std::vector<mpz_class> r = f;
    if (r.size() > 1) std::reverse(r.begin(), r.end() - 1);
    return r;
}

std::vector<mpz_class> f_vector(const HannerExpr& e) {
    switch (e.kind()) {
    case HannerExpr::Kind::Leaf:
        return {2, 1};
    case HannerExpr::Kind::Product:
        return poly_mul(f_vector(e.left()), f_vector(e.right()));
    case HannerExpr::Kind::FreeSum:
        return reverse_proper(poly_mul(reverse_proper(f_vector(e.left())), reverse_proper(f_vector(e.right()))));
    }
    return {};
}

PolytopePair materialize(const HannerExpr& e, const EnumLimits& limits) {
    const FCount& c = e.counts();
    const BigCount cap(limits.max_normals);
    if (e.dim() > limits.max_dim || c.num_vertices > cap || c.num_facets > cap) {
        throw LimitExceeded("materialize: " + e.to_string().substr(0, 64) + " exceeds enumeration limits (dim " +
                            std::to_string(e.dim()) + ", |V| " + c.num_vertices.str() + ", |F| " +
                            c.num_facets.str() + ")");
    }
    switch (e.kind()) {
    case HannerExpr::Kind::Leaf:
        return make_segment();
    case HannerExpr::Kind::Product:
        return product(materialize(e.left(), limits), materialize(e.right(), limits));
    case HannerExpr::Kind::FreeSum:
        return free_sum(materialize(e.left(), limits), materialize(e.right(), limits));
    }
    throw InvalidArgument("materialize: unknown node");
}

std::vector<HannerExpr> all_trees(int dim) {
    if (dim < 1) return {};
    std::vector<std::vector<HannerExpr>> by_dim(static_cast<std::size_t>(dim) + 1);
    by_dim[1] = {HannerExpr::leaf()};
    for (int d = 2; d <= dim; ++d) {
        for (int left = 1; left < d; ++left) {
            for (const auto& l : by_dim[static_cast<std::size_t>(left)]) {
                for (const auto& r : by_dim[static_cast<std::size_t>(d - left)]) {
                    by_dim[static_cast<std::size_t>(d)].push_back(HannerExpr::product(l, r));
                    by_dim[static_cast<std::size_t>(d)].push_back(HannerExpr::free_sum(l, r));
                }
            }
        }
    }
    return by_dim[static_cast<std::size_t>(dim)];
}

FamilyReport dyadic_family(double a, int max_exp) {
    if (max_exp < 0) throw InvalidArgument("dyadic_family: max_exp must be non-negative");
    FamilyReport rep;
    rep.a = a;
    HannerExpr e = HannerExpr::leaf();
    for (int m = 0; m <= max_exp; ++m) {
        if (m > 0) {
            e = dyadic_step_is_product(a, m - 1) ? HannerExpr::product(e, e) : HannerExpr::free_sum(e, e);
        }
        rep.rows.push_back(FamilyRow{m, e.dim(), e.counts().num_vertices.log(),
                                     e.counts().num_facets.log()});
    }
    return rep;
}

} // namespace flmlab

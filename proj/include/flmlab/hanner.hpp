#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "flmlab/count.hpp"
#include "flmlab/enumerate.hpp"
#include "flmlab/polytope.hpp"

namespace flmlab {

// Construction tree over the segment [-1, 1] with Cartesian products and
// free sums. Nodes are immutable and shared, so towers of depth 40 and
// products of hundreds of copies stay small. Counts and radii are computed
// once, bottom-up, when a node is created.
class HannerExpr {
public:
    enum class Kind { Leaf, Product, FreeSum };

    static HannerExpr leaf();
    static HannerExpr product(const HannerExpr& l, const HannerExpr& r);
    static HannerExpr free_sum(const HannerExpr& l, const HannerExpr& r);

    Kind kind() const { return node_->kind; }
    long dim() const { return node_->dim; }
    HannerExpr left() const;
    HannerExpr right() const;

    // (|V|, |F|) via Leaf -> (2,2), Product -> (V_l V_r, F_l + F_r),
    // FreeSum -> (V_l + V_r, F_l F_r).
    const FCount& counts() const { return node_->counts; }
    // Circumradius and inradius about the origin of the body built from
    // unit segments (product: R^2 adds, r = min; free sum: R = max,
    // r^-2 adds).
    double circumradius() const { return node_->circumradius; }
    double inradius() const { return node_->inradius; }

    // Swaps Product and FreeSum throughout; the polar body.
    HannerExpr dual() const;

    // "L", "P(x,y)", "F(x,y)"; shared subtrees are expanded.
    std::string to_string() const;

    friend bool operator==(const HannerExpr& a, const HannerExpr& b);

private:
    struct Node {
        Kind kind;
        std::shared_ptr<const Node> left, right;
        long dim;
        FCount counts;
        double circumradius;
        double inradius;
    };
    explicit HannerExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static HannerExpr combine(Kind k, const HannerExpr& l, const HannerExpr& r);

    std::shared_ptr<const Node> node_;
};

inline FCount counts(const HannerExpr& e) { return e.counts(); }

// Step s (building dimension 2^{s+1} from 2^s) takes a Product when
// s+1 is in A = {floor(k/a) : k >= 1}, and a FreeSum otherwise. Products
// then occur with frequency a, so log|V_{2^m}| ~ 2^{am} and
// log|F_{2^m}| ~ 2^{(1-a)m}; for a = 1/2 this is the alternation
// FreeSum, Product, FreeSum, ...
bool dyadic_step_is_product(double a, int step);
HannerExpr build_dyadic(double a, int m);

// n written in binary, one dyadic tower per set bit, multiplied together
// (largest first).
HannerExpr build_general_n(long n, double a);

// f(n) families for the padded products.
struct GrowthFn {
    struct Log {};
    struct Power {
        double delta;
    };
    struct ConstTimesLog {
        double eps;
    };
    // f constant; used for the log(alpha) profile.
    struct Constant {
        double value;
    };
    // values[i] is f(i + first)
    struct Table {
        long first;
        std::vector<double> values;
    };
    std::variant<Log, Power, ConstTimesLog, Constant, Table> form;

    double operator()(long n) const;
    std::string name() const;
};

struct PaddedBody {
    HannerExpr expr = HannerExpr::leaf();
    long block_dim = 0; // n = floor(f(N))^2
    long copies = 0;    // floor(N / n)
    long k = 0;         // n * copies
};

// Product of floor(N/n) copies of the a = 1/2 body of dimension
// n = floor(f(N))^2.
PaddedBody build_padded(const GrowthFn& f, long N);

// Face counts by dimension, f_0 .. f_d, including the polytope itself and
// excluding the empty face. Products multiply the generating polynomials;
// free sums go through the dual: f(P (+) Q) = rev(rev f(P) * rev f(Q)), where
// rev reverses the proper-face part f_0..f_{d-1} and keeps f_d = 1.
std::vector<mpz_class> f_vector(const HannerExpr& e);
std::vector<mpz_class> reverse_proper(const std::vector<mpz_class>& f);

// Coordinates for both representations, via the poly-core constructors.
PolytopePair materialize(const HannerExpr& e, const EnumLimits& limits = {});

// Every construction tree with exactly `dim` leaves (left/right order
// distinguished).
std::vector<HannerExpr> all_trees(int dim);

struct FamilyRow {
    int m = 0;
    long dim = 0;
    double logV = 0.0; // natural logs
    double logF = 0.0;
};

struct FamilyReport {
    double a = 0.0;
    std::vector<FamilyRow> rows;
};

// Rows m = 0..max_exp of the dyadic tower for density a.
FamilyReport dyadic_family(double a, int max_exp);

} // namespace flmlab

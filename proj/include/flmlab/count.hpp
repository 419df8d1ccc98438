#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace flmlab {

// Exact non-negative integer stored as odd * 2^shift.
//
// Vertex and facet counts of dyadic Hanner towers are mostly powers of two
// with exponents in the billions (|V| of the a=0.75 tower at dim 2^40 has
// about 2^30 bits); keeping the power of two symbolic makes those exact and
// cheap while general sums still fall back to full GMP arithmetic.
class BigCount {
public:
    BigCount() = default;
    BigCount(std::uint64_t v); // NOLINT(google-explicit-constructor)
    static BigCount pow2(std::uint64_t exponent);

    bool is_zero() const { return odd_ == 0; }
    std::uint64_t shift() const { return shift_; }
    const mpz_class& odd_part() const { return odd_; }

    // Number of binary digits; 0 for zero.
    std::uint64_t bit_length() const;
    double log2() const;
    double log() const;

    std::optional<std::uint64_t> to_u64() const;
    // Decimal digits, or "2^e*m" style when the decimal form would be huge.
    std::string str() const;

    friend BigCount operator+(const BigCount& a, const BigCount& b);
    friend BigCount operator*(const BigCount& a, const BigCount& b);
    BigCount& operator+=(const BigCount& o) { return *this = *this + o; }
    BigCount& operator*=(const BigCount& o) { return *this = *this * o; }

    friend bool operator==(const BigCount& a, const BigCount& b) {
        return a.shift_ == b.shift_ && a.odd_ == b.odd_;
    }
    friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b);

private:
    void normalize();

    mpz_class odd_ = 0;
    std::uint64_t shift_ = 0;
};

// Vertex/facet counts of one full-dimensional polytope.
struct FCount {
    BigCount num_vertices;
    BigCount num_facets;
    long dim = 0;

    friend bool operator==(const FCount&, const FCount&) = default;
};

} // namespace flmlab

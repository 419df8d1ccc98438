#include "flmlab/count.hpp"

#include <cmath>
#include <numbers>

namespace flmlab {

BigCount::BigCount(std::uint64_t v) {
    // mpz_class has no portable uint64 constructor on every platform.
    mpz_import(odd_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    normalize();
}

BigCount BigCount::pow2(std::uint64_t exponent) {
    BigCount c;
    c.odd_ = 1;
    c.shift_ = exponent;
    return c;
}

void BigCount::normalize() {
    if (odd_ == 0) {
        shift_ = 0;
        return;
    }
    const auto tz = mpz_scan1(odd_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(odd_.get_mpz_t(), odd_.get_mpz_t(), tz);
        shift_ += tz;
    }
}

std::uint64_t BigCount::bit_length() const {
    if (is_zero()) return 0;
    return mpz_sizeinbase(odd_.get_mpz_t(), 2) + shift_;
}

double BigCount::log2() const {
    if (is_zero()) return -HUGE_VAL;
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, odd_.get_mpz_t());
    return std::log2(mant) + static_cast<double>(exp) + static_cast<double>(shift_);
}

double BigCount::log() const { return log2() * std::numbers::ln2; }

std::optional<std::uint64_t> BigCount::to_u64() const {
    if (bit_length() > 64) return std::nullopt;
    if (is_zero()) return 0;
    std::uint64_t v = 0;
    std::size_t count = 0;
    mpz_export(&v, &count, 1, sizeof(v), 0, 0, odd_.get_mpz_t());
    return v << shift_;
}

std::string BigCount::str() const {
    if (bit_length() <= 4096) {
        mpz_class full = odd_;
        mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), shift_);
        return full.get_str();
    }
    std::string s = "2^" + std::to_string(shift_);
    if (odd_ != 1) {
        s += "*";
        s += mpz_sizeinbase(odd_.get_mpz_t(), 2) <= 4096 ? odd_.get_str()
                                                         : "<" + std::to_string(mpz_sizeinbase(odd_.get_mpz_t(), 2)) + " bits>";
    }
    return s;
}

BigCount operator+(const BigCount& a, const BigCount& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const BigCount& lo = a.shift_ <= b.shift_ ? a : b;
    const BigCount& hi = a.shift_ <= b.shift_ ? b : a;
    BigCount r;
    mpz_class aligned = hi.odd_;
    mpz_mul_2exp(aligned.get_mpz_t(), aligned.get_mpz_t(), hi.shift_ - lo.shift_);
    r.odd_ = aligned + lo.odd_;
    r.shift_ = lo.shift_;
    r.normalize();
    return r;
}

BigCount operator*(const BigCount& a, const BigCount& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BigCount r;
    r.odd_ = a.odd_ * b.odd_;
    r.shift_ = a.shift_ + b.shift_;
    return r;
}

std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    const auto la = a.bit_length();
    const auto lb = b.bit_length();
    if (la != lb) return la <=> lb;
    if (la == 0) return std::strong_ordering::equal;
    // Same bit length, so the shift difference is bounded by the odd parts' size.
    const BigCount& lo = a.shift_ <= b.shift_ ? a : b;
    const BigCount& hi = a.shift_ <= b.shift_ ? b : a;
    mpz_class aligned = hi.odd_;
    mpz_mul_2exp(aligned.get_mpz_t(), aligned.get_mpz_t(), hi.shift_ - lo.shift_);
    const int c = cmp(aligned, lo.odd_);
    const int sign = (&hi == &a) ? c : -c;
    if (sign < 0) return std::strong_ordering::less;
    if (sign > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace flmlab

#pragma once

// Z_p exponents held as base-p digit windows of length M (default 32),
// with an optional exact-integer tag. Negative integers carry the usual
// expansion (-1 has every digit p-1), so an exact tag also pins every
// digit beyond the stored window.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fqzeta {

class PadicExponent {
public:
    static constexpr unsigned default_window = 32;

    PadicExponent(unsigned p, long long n, unsigned M = default_window)
        : p_(check_p(p)), digits_(M, 0), fill_(n < 0 ? p - 1 : 0), fill_known_(true) {
        long long x = n;
        for (unsigned i = 0; i < M; ++i) {
            long long d = x % (long long)p_;
            if (d < 0) d += p_;
            digits_[i] = std::uint8_t(d);
            x = (x - d) / (long long)p_;
        }
        exact_ = true;
        value_ = n;
    }

    PadicExponent(unsigned p, std::vector<std::uint8_t> digits)
        : p_(check_p(p)), digits_(std::move(digits)), fill_(0), fill_known_(false) {
        if (digits_.empty()) throw std::invalid_argument("PadicExponent: empty digit window");
        for (auto d : digits_)
            if (d >= p_) throw std::invalid_argument("PadicExponent: digit out of range");
    }

    unsigned p() const { return p_; }
    unsigned window() const { return unsigned(digits_.size()); }
    bool is_exact_integer() const { return exact_; }
    long long integer_value() const {
        if (!exact_) throw std::domain_error("PadicExponent: not tagged as an exact integer");
        return value_;
    }

    // digit at position i; beyond the window only exact integers know it
    unsigned digit(std::size_t i) const {
        if (i < digits_.size()) return digits_[i];
        if (!fill_known_)
            throw std::domain_error("PadicExponent: digit beyond window (raise M)");
        return fill_;
    }
    bool digit_known(std::size_t i) const { return i < digits_.size() || fill_known_; }

    bool is_zero() const {
        if (exact_) return value_ == 0;
        for (auto d : digits_)
            if (d) return false;
        return !fill_known_ || fill_ == 0;
    }

    PadicExponent operator+(const PadicExponent& o) const {
        check(o);
        std::size_t M = std::min(digits_.size(), o.digits_.size());
        std::vector<std::uint8_t> r(M);
        unsigned carry = 0;
        for (std::size_t i = 0; i < M; ++i) {
            unsigned s = digits_[i] + o.digits_[i] + carry;
            r[i] = std::uint8_t(s % p_);
            carry = s / p_;
        }
        PadicExponent out(p_, std::move(r));
        if (exact_ && o.exact_) out.tag_exact(value_ + o.value_);
        else if (fill_known_ && o.fill_known_) {
            // both expansions are eventually constant only when the fills
            // produce no infinite carry chain; keep it conservative
            if (fill_ == 0 && o.fill_ == 0) { out.fill_ = 0; out.fill_known_ = digits_.size() == o.digits_.size(); }
        }
        return out;
    }

    PadicExponent operator-() const {
        // p-adic negation: complement digits, add 1
        std::vector<std::uint8_t> r(digits_.size());
        unsigned carry = 1;
        for (std::size_t i = 0; i < digits_.size(); ++i) {
            unsigned s = (p_ - 1 - digits_[i]) + carry;
            r[i] = std::uint8_t(s % p_);
            carry = s / p_;
        }
        PadicExponent out(p_, std::move(r));
        if (exact_) out.tag_exact(-value_);
        return out;
    }
    PadicExponent operator-(const PadicExponent& o) const { return *this + (-o); }

    PadicExponent operator*(const PadicExponent& o) const {
        check(o);
        std::size_t M = std::min(digits_.size(), o.digits_.size());
        std::vector<std::uint32_t> acc(M, 0);
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; i + j < M; ++j)
                acc[i + j] += unsigned(digits_[i]) * o.digits_[j];
        std::vector<std::uint8_t> r(M);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < M; ++i) {
            std::uint64_t s = acc[i] + carry;
            r[i] = std::uint8_t(s % p_);
            carry = s / p_;
        }
        PadicExponent out(p_, std::move(r));
        if (exact_ && o.exact_) {
            __int128 v = (__int128)value_ * o.value_;
            if (v <= INT64_MAX && v >= INT64_MIN) out.tag_exact((long long)v);
        }
        return out;
    }

    bool operator==(const PadicExponent& o) const {
        return p_ == o.p_ && digits_ == o.digits_ && (!exact_ || !o.exact_ || value_ == o.value_);
    }

private:
    static unsigned check_p(unsigned p) {
        if (p < 2) throw std::invalid_argument("PadicExponent: bad characteristic");
        return p;
    }
    void check(const PadicExponent& o) const {
        if (p_ != o.p_) throw std::domain_error("PadicExponent: mixed characteristics");
    }
    void tag_exact(long long v) {
        exact_ = true;
        value_ = v;
        fill_ = v < 0 ? p_ - 1 : 0;
        fill_known_ = true;
    }

    unsigned p_;
    std::vector<std::uint8_t> digits_;
    unsigned fill_;
    bool fill_known_;
    bool exact_ = false;
    long long value_ = 0;
};

// C(y, j) mod p by Lucas' theorem on base-p digits
inline unsigned binom_mod_p(const PadicExponent& y, unsigned long long j) {
    const unsigned p = y.p();
    // C(a, b) mod p for single digits a, b < p
    auto digit_binom = [p](unsigned a, unsigned b) -> unsigned {
        if (b > a) return 0;
        unsigned long long num = 1, den = 1;
        b = std::min(b, a - b);
        for (unsigned i = 0; i < b; ++i) {
            num = num * ((a - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        // den is invertible mod p
        unsigned long long inv = 1, base = den, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return unsigned(num * inv % p);
    };
    unsigned result = 1;
    std::size_t i = 0;
    while (j > 0 || i < y.window()) {
        unsigned jd = unsigned(j % p);
        if (j > 0 && !y.digit_known(i))
            throw std::domain_error("binom_mod_p: exponent digit window too small (j >= p^M)");
        if (j == 0) break;  // remaining digits of j are zero, C(y_i, 0) = 1
        result = result * digit_binom(y.digit(i), jd) % p;
        if (!result) return 0;
        j /= p;
        ++i;
    }
    return result;
}

// integer convenience form: C(n, k) mod p for machine integers
inline unsigned binom_mod_p(unsigned p, unsigned long long n, unsigned long long k) {
    unsigned result = 1;
    auto digit_binom = [p](unsigned a, unsigned b) -> unsigned {
        if (b > a) return 0;
        unsigned long long num = 1, den = 1;
        b = std::min(b, a - b);
        for (unsigned i = 0; i < b; ++i) {
            num = num * ((a - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        unsigned long long inv = 1, base = den, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return unsigned(num * inv % p);
    };
    while (n > 0 || k > 0) {
        unsigned nd = unsigned(n % p), kd = unsigned(k % p);
        result = result * digit_binom(nd, kd) % p;
        if (!result) return 0;
        n /= p;
        k /= p;
    }
    return result;
}

}  // namespace fqzeta

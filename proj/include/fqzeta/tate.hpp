#pragma once

// Polynomials / truncated power series in z with LaurentSeries coefficients.
// deg_cap marks the largest z-power whose coefficient is known; exact values
// (plain polynomials) carry the exact sentinel.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "fq.hpp"
#include "laurent.hpp"
#include "padic_exponent.hpp"

namespace fqzeta {

class TateSeries {
public:
    static constexpr int exact_deg = 1 << 30;

    explicit TateSeries(const FqField& F) : F_(F), deg_cap_(exact_deg) {}

    TateSeries(const FqField& F, std::vector<LaurentSeries> coeffs, int deg_cap = exact_deg)
        : F_(F), c_(std::move(coeffs)), deg_cap_(deg_cap) {
        for (const auto& x : c_)
            if (x.field() != F_) throw std::domain_error("TateSeries: mixed fields");
        normalize();
    }

    static TateSeries zero(const FqField& F) { return TateSeries(F); }
    static TateSeries one(const FqField& F) {
        return TateSeries(F, {LaurentSeries::one(F)});
    }
    static TateSeries z_power(const FqField& F, int k, LaurentSeries c) {
        std::vector<LaurentSeries> v(std::size_t(k) + 1, LaurentSeries::zero(F));
        v[std::size_t(k)] = std::move(c);
        return TateSeries(F, std::move(v));
    }
    static TateSeries z_power(const FqField& F, int k) {
        return z_power(F, k, LaurentSeries::one(F));
    }

    const FqField& field() const { return F_; }
    int deg_cap() const { return deg_cap_; }
    bool is_exact() const { return deg_cap_ >= exact_deg; }
    bool is_zero() const { return c_.empty(); }

    // degree as far as visible: largest index with a coefficient that is not
    // (apparently) zero
    int degree() const {
        for (int i = int(c_.size()) - 1; i >= 0; --i)
            if (!c_[std::size_t(i)].known_zero()) return i;
        return -1;
    }

    LaurentSeries coeff(int i) const {
        if (i > deg_cap_) throw std::domain_error("TateSeries: coefficient beyond z-truncation");
        if (i < 0 || i >= int(c_.size())) return LaurentSeries::zero(F_);
        return c_[std::size_t(i)];
    }
    const std::vector<LaurentSeries>& coeffs() const { return c_; }

    TateSeries operator+(const TateSeries& o) const {
        check(o);
        int cap = std::min(deg_cap_, o.deg_cap_);
        std::size_t n = std::max(c_.size(), o.c_.size());
        std::vector<LaurentSeries> v;
        v.reserve(n);
        for (std::size_t i = 0; i < n && int(i) <= cap; ++i)
            v.push_back(at(i) + o.at(i));
        return TateSeries(F_, std::move(v), cap);
    }
    TateSeries operator-() const {
        TateSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    TateSeries operator-(const TateSeries& o) const { return *this + (-o); }

    TateSeries operator*(const TateSeries& o) const {
        check(o);
        int cap = std::min(deg_cap_, o.deg_cap_);
        if (c_.empty() || o.c_.empty()) return TateSeries(F_, {}, cap);
        std::size_t n = c_.size() + o.c_.size() - 1;
        if (cap < exact_deg) n = std::min(n, std::size_t(cap) + 1);
        std::vector<LaurentSeries> v(n, LaurentSeries::zero(F_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_exact_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size() && i + j < n; ++j)
                v[i + j] = v[i + j] + c_[i] * o.c_[j];
        }
        return TateSeries(F_, std::move(v), cap);
    }

    TateSeries scale(const LaurentSeries& s) const {
        TateSeries r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }

    TateSeries truncated_deg(int cap) const {
        if (cap >= deg_cap_) return *this;
        TateSeries r = *this;
        r.deg_cap_ = cap;
        if (int(r.c_.size()) > cap + 1)
            r.c_.erase(r.c_.begin() + std::max(0, cap + 1), r.c_.end());
        r.normalize();
        return r;
    }

    LaurentSeries eval(const LaurentSeries& z) const {
        LaurentSeries acc = LaurentSeries::zero(F_);
        for (int i = int(c_.size()) - 1; i >= 0; --i)
            acc = acc * z + c_[std::size_t(i)];
        return acc;
    }

    bool agrees_with(const TateSeries& o) const {
        check(o);
        int cap = std::min(deg_cap_, o.deg_cap_);
        std::size_t n = std::max(c_.size(), o.c_.size());
        for (std::size_t i = 0; i < n && int(i) <= cap; ++i)
            if (!at(i).agrees_with(o.at(i))) return false;
        return true;
    }

private:
    LaurentSeries at(std::size_t i) const {
        return i < c_.size() ? c_[i] : LaurentSeries::zero(F_);
    }
    void check(const TateSeries& o) const {
        if (F_ != o.F_) throw std::domain_error("TateSeries: mixed fields");
    }
    void normalize() {
        if (deg_cap_ < exact_deg && int(c_.size()) > deg_cap_ + 1)
            c_.erase(c_.begin() + std::max(0, deg_cap_ + 1), c_.end());
        while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
    }

    FqField F_;
    std::vector<LaurentSeries> c_;
    int deg_cap_;
};

// divided derivative D_z^i/i!: z^n -> C(n,i) z^{n-i}, binomials mod p
inline TateSeries hyperderivative(const TateSeries& f, unsigned i) {
    const FqField& F = f.field();
    if (i == 0) return f;
    std::vector<LaurentSeries> v;
    const auto& c = f.coeffs();
    for (std::size_t n = i; n < c.size(); ++n) {
        unsigned b = binom_mod_p(F.p(), (unsigned long long)n, (unsigned long long)i);
        v.push_back(b ? c[n].scale(F.from_int((long long)b)) : LaurentSeries::zero(F));
    }
    int cap = f.deg_cap();
    if (cap < TateSeries::exact_deg) cap = std::max(-1, cap - int(i));
    return TateSeries(F, std::move(v), cap);
}

// valuation of the minimal-valuation coefficient; requires enough precision
// to pin the minimum down
inline int gauss_norm(const TateSeries& f) {
    bool found = false;
    int best = 0;
    int floor_bound = LaurentSeries::exact_prec;
    for (const auto& c : f.coeffs()) {
        if (c.known_zero()) {
            if (!c.is_exact()) floor_bound = std::min(floor_bound, c.precision());
        } else {
            int v = c.val();
            best = found ? std::min(best, v) : v;
            found = true;
        }
    }
    if (!found) throw std::domain_error("gauss_norm: zero polynomial");
    if (floor_bound < best)
        throw std::domain_error("gauss_norm: insufficient precision to certify minimum");
    return best;
}

}  // namespace fqzeta

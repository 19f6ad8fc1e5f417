#pragma once

// Laurent series in the uniformizer u = 1/T with first-class precision.
//
// A value is a coefficient window starting at exponent val() together with
// a precision marker: coefficients at exponents >= precision() are unknown,
// everything below the window is known to be zero. Values produced by exact
// operations on exact inputs keep the sentinel "exact" precision, so
// polynomial data flows through with no truncation. Binary operations
// propagate precision with the usual min/valuation rules.
//
// Text form: "v; c_0,c_1,...,c_{N-1}" is the window starting at exponent v;
// the parsed precision is v + N. Exact zero prints as "0".
//
// A polynomial a(T) embeds exactly with u-valuation -deg(a).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fq.hpp"
#include "fqpoly.hpp"
#include "padic_exponent.hpp"

namespace fqzeta {

class LaurentSeries {
public:
    static constexpr int exact_prec = 1 << 30;

    static int sat_add(int a, int b) {
        if (a >= exact_prec || b >= exact_prec) return exact_prec;
        long long s = (long long)a + b;
        if (s >= exact_prec) return exact_prec;
        return int(s);
    }

    explicit LaurentSeries(const FqField& F) : F_(F), val_(0), prec_(exact_prec) {}

    LaurentSeries(const FqField& F, int val, std::vector<felem> window, int prec = exact_prec)
        : F_(F), val_(val), c_(std::move(window)), prec_(prec) {
        for (felem x : c_)
            if (x >= F_.q()) throw std::invalid_argument("LaurentSeries: coefficient out of range");
        normalize();
    }

    static LaurentSeries zero(const FqField& F) { return LaurentSeries(F); }
    static LaurentSeries zero_mod(const FqField& F, int prec) {
        LaurentSeries z(F);
        z.prec_ = prec;
        return z;
    }
    static LaurentSeries one(const FqField& F) { return LaurentSeries(F, 0, {1}); }
    static LaurentSeries monomial(const FqField& F, int exp, felem c = 1) {
        return LaurentSeries(F, exp, {c});
    }
    // embed a polynomial in T: T^k has u-exponent -k
    static LaurentSeries from_poly(const FqPoly& a) {
        if (a.is_zero()) return zero(a.field());
        std::vector<felem> w(a.coeffs().rbegin(), a.coeffs().rend());
        return LaurentSeries(a.field(), -a.degree(), std::move(w));
    }

    const FqField& field() const { return F_; }
    bool is_exact() const { return prec_ >= exact_prec; }
    int precision() const { return prec_; }
    bool known_zero() const { return c_.empty(); }        // zero modulo u^precision()
    bool is_exact_zero() const { return c_.empty() && is_exact(); }

    int val() const {
        if (c_.empty()) throw std::domain_error("LaurentSeries: valuation of (apparent) zero");
        return val_;
    }
    // lower bound for the valuation that is always available
    int val_bound() const { return c_.empty() ? prec_ : val_; }

    bool coeff_known(int e) const { return e < prec_; }
    felem coeff(int e) const {
        if (!coeff_known(e)) throw std::domain_error("LaurentSeries: coefficient beyond precision");
        if (c_.empty() || e < val_ || e >= val_ + int(c_.size())) return 0;
        return c_[std::size_t(e - val_)];
    }
    const std::vector<felem>& window() const { return c_; }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (felem& x : r.c_) x = F_.neg(x);
        return r;
    }

    LaurentSeries operator+(const LaurentSeries& o) const {
        check(o);
        int prec = std::min(prec_, o.prec_);
        if (c_.empty() && o.c_.empty()) return zero_mod_or_exact(F_, prec);
        int lo = c_.empty() ? o.val_ : (o.c_.empty() ? val_ : std::min(val_, o.val_));
        int hi = lo;
        if (!c_.empty()) hi = std::max(hi, val_ + int(c_.size()));
        if (!o.c_.empty()) hi = std::max(hi, o.val_ + int(o.c_.size()));
        hi = std::min(hi, prec);
        if (hi <= lo) return zero_mod_or_exact(F_, prec);
        std::vector<felem> w(std::size_t(hi - lo), 0);
        for (int e = lo; e < hi; ++e)
            w[std::size_t(e - lo)] = F_.add(at(e), o.at(e));
        return LaurentSeries(F_, lo, std::move(w), prec);
    }
    LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }

    LaurentSeries operator*(const LaurentSeries& o) const {
        check(o);
        int prec;
        if (is_exact() && o.is_exact()) prec = exact_prec;
        else prec = std::min(sat_add(prec_, o.val_bound()), sat_add(o.prec_, val_bound()));
        if (c_.empty() || o.c_.empty()) return zero_mod_or_exact(F_, prec);
        int lo = val_ + o.val_;
        int hi = std::min(lo + int(c_.size() + o.c_.size()) - 1, prec);
        if (hi <= lo && prec < exact_prec) return zero_mod_or_exact(F_, prec);
        std::vector<felem> w(std::size_t(hi - lo), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                int e = val_ + int(i) + o.val_ + int(j);
                if (e >= hi) break;
                if (o.c_[j]) w[std::size_t(e - lo)] = F_.add(w[std::size_t(e - lo)], F_.mul(c_[i], o.c_[j]));
            }
        }
        return LaurentSeries(F_, lo, std::move(w), prec);
    }

    LaurentSeries scale(felem s) const {
        if (!s) return zero_mod_or_exact(F_, prec_);
        LaurentSeries r = *this;
        for (felem& x : r.c_) x = F_.mul(x, s);
        r.normalize();
        return r;
    }

    LaurentSeries shifted(int k) const {  // multiply by u^k
        LaurentSeries r = *this;
        r.val_ += k;
        r.prec_ = sat_add(r.prec_, k);
        return r;
    }

    LaurentSeries truncated(int prec) const {
        if (prec >= prec_) return *this;
        LaurentSeries r = *this;
        r.prec_ = prec;
        if (!r.c_.empty() && r.val_ + int(r.c_.size()) > prec)
            r.c_.resize(std::size_t(std::max(0, prec - r.val_)));
        r.normalize();
        return r;
    }

    // multiplicative inverse with at most rel_terms coefficients of relative
    // precision; requires a visible leading coefficient
    LaurentSeries inverse(int rel_terms) const {
        if (c_.empty())
            throw std::domain_error("LaurentSeries: cannot invert (apparent) zero");
        if (rel_terms < 1) throw std::invalid_argument("LaurentSeries: inverse needs >= 1 term");
        int rel = rel_terms;
        if (!is_exact()) rel = std::min(rel, prec_ - val_);
        // invert the unit part c_[0] + c_[1] u + ...
        std::vector<felem> h(std::size_t(rel), 0);
        felem lead_inv = F_.inv(c_[0]);
        h[0] = lead_inv;
        for (int n = 1; n < rel; ++n) {
            felem acc = 0;
            for (int k = 1; k <= n && k < int(c_.size()); ++k)
                acc = F_.add(acc, F_.mul(c_[std::size_t(k)], h[std::size_t(n - k)]));
            h[std::size_t(n)] = F_.neg(F_.mul(acc, lead_inv));
        }
        return LaurentSeries(F_, -val_, std::move(h), -val_ + rel);
    }

    LaurentSeries pow(long long k, int rel_terms = 0) const {
        if (k < 0) {
            if (rel_terms < 1)
                throw std::invalid_argument("LaurentSeries: negative power needs rel_terms");
            return inverse(rel_terms).pow(-k);
        }
        LaurentSeries r = one(F_), b = *this;
        unsigned long long e = (unsigned long long)k;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    bool is_one_unit() const {
        return !c_.empty() && val_ == 0 && c_[0] == 1;
    }

    // read off a polynomial in T from the window; all visible positive
    // exponents must vanish
    FqPoly to_poly_in_T() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (val_ + int(i) > 0 && c_[i])
                throw std::domain_error("LaurentSeries: positive u-exponents present");
        if (c_.empty()) return FqPoly::zero(F_);
        int deg = -val_;
        if (deg < 0) return FqPoly::zero(F_);
        std::vector<felem> coeffs(std::size_t(deg) + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            int e = val_ + int(i);
            if (e <= 0) coeffs[std::size_t(-e)] = c_[i];
        }
        return FqPoly(F_, std::move(coeffs));
    }

    // equality of everything both sides can see
    bool agrees_with(const LaurentSeries& o) const {
        check(o);
        int prec = std::min(prec_, o.prec_);
        int lo = std::min(c_.empty() ? prec : val_, o.c_.empty() ? prec : o.val_);
        int hi = lo;  // beyond both windows every coefficient reads zero
        if (!c_.empty()) hi = std::max(hi, val_ + int(c_.size()));
        if (!o.c_.empty()) hi = std::max(hi, o.val_ + int(o.c_.size()));
        hi = std::min(hi, prec);
        for (int e = lo; e < hi; ++e)
            if (at(e) != o.at(e)) return false;
        return true;
    }
    bool operator==(const LaurentSeries& o) const {
        return F_ == o.F_ && prec_ == o.prec_ &&
               ((c_.empty() && o.c_.empty()) || (val_ == o.val_ && c_ == o.c_));
    }
    bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

    std::string to_text() const {
        if (is_exact_zero()) return "0";
        std::ostringstream out;
        if (c_.empty()) {
            out << prec_ << ";";
            return out.str();
        }
        int hi = is_exact() ? val_ + int(c_.size()) : prec_;
        out << val_ << "; ";
        for (int e = val_; e < hi; ++e) {
            if (e > val_) out << ',';
            out << at(e);
        }
        return out.str();
    }

    static LaurentSeries parse(const FqField& F, const std::string& text) {
        std::size_t semi = text.find(';');
        if (semi == std::string::npos) {
            if (text == "0") return zero(F);
            throw std::invalid_argument("LaurentSeries: missing ';'");
        }
        int v = std::stoi(text.substr(0, semi));
        std::string rest = text.substr(semi + 1);
        std::vector<felem> w;
        std::string tok;
        std::istringstream in(rest);
        while (std::getline(in, tok, ',')) {
            std::size_t a = tok.find_first_not_of(" \t");
            if (a == std::string::npos) continue;
            std::size_t b = tok.find_last_not_of(" \t");
            w.push_back(felem(std::stoul(tok.substr(a, b - a + 1))));
        }
        if (w.empty()) return zero_mod(F, v);
        int prec = v + int(w.size());
        return LaurentSeries(F, v, std::move(w), prec);
    }

private:
    static LaurentSeries zero_mod_or_exact(const FqField& F, int prec) {
        return prec >= exact_prec ? zero(F) : zero_mod(F, prec);
    }
    felem at(int e) const {
        if (c_.empty() || e < val_ || e >= val_ + int(c_.size())) return 0;
        return c_[std::size_t(e - val_)];
    }
    void check(const LaurentSeries& o) const {
        if (F_ != o.F_) throw std::domain_error("LaurentSeries: mixed fields");
    }
    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + long(lead));
            val_ += int(lead);
        }
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        if (!c_.empty() && prec_ < exact_prec && val_ + int(c_.size()) > prec_) {
            c_.resize(std::size_t(std::max(0, prec_ - val_)));
            while (!c_.empty() && c_.back() == 0) c_.pop_back();
        }
        if (c_.empty()) val_ = 0;
    }

    FqField F_;
    int val_;
    std::vector<felem> c_;
    int prec_;
};

// <alpha>^y for a 1-unit alpha = 1 + lambda, v(lambda) >= 1, via the digit
// binomial series sum_k C(y,k) lambda^k; the result is known modulo
// u^min(n_terms, precision of alpha)
inline LaurentSeries one_unit_pow(const LaurentSeries& alpha, const PadicExponent& y,
                                  int n_terms) {
    const FqField& F = alpha.field();
    if (F.p() != y.p()) throw std::domain_error("one_unit_pow: characteristic mismatch");
    if (!alpha.is_one_unit())
        throw std::domain_error("one_unit_pow: base is not a 1-unit");
    LaurentSeries lam = alpha - LaurentSeries::one(F);
    if (!lam.known_zero() && lam.val() < 1)
        throw std::domain_error("one_unit_pow: base is not a 1-unit");
    int target = std::min(n_terms, alpha.precision());
    LaurentSeries acc = LaurentSeries::one(F).truncated(target);
    LaurentSeries term = LaurentSeries::one(F);
    for (int k = 1; k < target; ++k) {
        term = (term * lam).truncated(target);
        if (term.known_zero()) break;
        unsigned c = binom_mod_p(y, (unsigned long long)k);
        if (c) acc = acc + term.scale(F.from_int((long long)c));
    }
    return acc.truncated(target);
}

}  // namespace fqzeta

#pragma once

// Dense polynomials over F_q in the indeterminate T.
//
// Text formats:
//   dense  "1,1,0,1"       comma-separated coefficients, ascending degree;
//                          each coefficient is its base-p digit string
//                          (single decimal value for prime fields, digits
//                          joined with '.' when p > 10 and e > 1)
//   human  "T^3+T+1"       prime fields only, '+'/'-' separated terms,
//                          optional '*' between coefficient and T
//
// Monic enumeration of a degree stratum is lexicographic ascending on the
// coefficient tuple (c_0, c_1, ..., c_{d-1}); this order is part of the
// external contract and is never changed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fq.hpp"

namespace fqzeta {

class FqPoly {
public:
    explicit FqPoly(const FqField& F) : F_(F) {}
    FqPoly(const FqField& F, std::vector<felem> coeffs) : F_(F), c_(std::move(coeffs)) {
        for (felem x : c_)
            if (x >= F_.q()) throw std::invalid_argument("FqPoly: coefficient out of range");
        trim();
    }

    const FqField& field() const { return F_; }
    const std::vector<felem>& coeffs() const { return c_; }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    felem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : felem(0); }
    felem leading() const { return c_.empty() ? felem(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    static FqPoly zero(const FqField& F) { return FqPoly(F); }
    static FqPoly one(const FqField& F) { return FqPoly(F, {1}); }
    static FqPoly constant(const FqField& F, felem c) {
        return c ? FqPoly(F, {c}) : FqPoly(F);
    }
    static FqPoly T(const FqField& F) { return FqPoly(F, {0, 1}); }

    FqPoly operator+(const FqPoly& o) const {
        check(o);
        std::vector<felem> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_.add(coeff(i), o.coeff(i));
        return FqPoly(F_, raw_tag{}, std::move(r));
    }
    FqPoly operator-(const FqPoly& o) const {
        check(o);
        std::vector<felem> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_.sub(coeff(i), o.coeff(i));
        return FqPoly(F_, raw_tag{}, std::move(r));
    }
    FqPoly operator-() const {
        std::vector<felem> r(c_);
        for (felem& x : r) x = F_.neg(x);
        return FqPoly(F_, raw_tag{}, std::move(r));
    }
    FqPoly operator*(const FqPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return FqPoly(F_);
        std::vector<felem> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                if (o.c_[j]) r[i + j] = F_.add(r[i + j], F_.mul(c_[i], o.c_[j]));
        }
        return FqPoly(F_, raw_tag{}, std::move(r));
    }
    FqPoly scale(felem s) const {
        std::vector<felem> r(c_);
        for (felem& x : r) x = F_.mul(x, s);
        return FqPoly(F_, raw_tag{}, std::move(r));
    }
    FqPoly shift(std::size_t k) const {  // multiply by T^k
        if (is_zero()) return *this;
        std::vector<felem> r(c_.size() + k, 0);
        std::copy(c_.begin(), c_.end(), r.begin() + long(k));
        return FqPoly(F_, raw_tag{}, std::move(r));
    }

    // quotient and remainder; divisor need not be monic
    std::pair<FqPoly, FqPoly> divmod(const FqPoly& d) const {
        check(d);
        if (d.is_zero()) throw std::domain_error("FqPoly: division by zero");
        std::vector<felem> rem(c_), quo;
        if (degree() >= d.degree()) quo.assign(std::size_t(degree() - d.degree()) + 1, 0);
        felem linv = F_.inv(d.leading());
        for (int i = degree(); i >= d.degree(); --i) {
            if (int(rem.size()) <= i || !rem[std::size_t(i)]) continue;
            felem f = F_.mul(rem[std::size_t(i)], linv);
            quo[std::size_t(i - d.degree())] = f;
            for (int j = 0; j <= d.degree(); ++j) {
                std::size_t k = std::size_t(i - d.degree() + j);
                rem[k] = F_.sub(rem[k], F_.mul(f, d.c_[std::size_t(j)]));
            }
        }
        return {FqPoly(F_, raw_tag{}, std::move(quo)), FqPoly(F_, raw_tag{}, std::move(rem))};
    }
    FqPoly operator/(const FqPoly& d) const { return divmod(d).first; }
    FqPoly operator%(const FqPoly& d) const { return divmod(d).second; }

    bool divides(const FqPoly& a) const { return a.divmod(*this).second.is_zero(); }

    FqPoly pow(unsigned long long k) const {
        FqPoly r = one(F_), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }
    FqPoly mul_mod(const FqPoly& o, const FqPoly& m) const { return (*this * o) % m; }
    FqPoly pow_mod(unsigned long long k, const FqPoly& m) const {
        FqPoly r = one(F_) % m, b = *this % m;
        while (k) {
            if (k & 1) r = r.mul_mod(b, m);
            if (k >>= 1) b = b.mul_mod(b, m);
        }
        return r;
    }

    FqPoly derivative() const {
        if (c_.size() < 2) return FqPoly(F_);
        std::vector<felem> r(c_.size() - 1, 0);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r[i - 1] = F_.mul(c_[i], F_.from_int((long long)i));
        return FqPoly(F_, raw_tag{}, std::move(r));
    }

    felem eval(felem x) const {
        felem r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = F_.add(F_.mul(r, x), c_[i]);
        return r;
    }

    bool operator==(const FqPoly& o) const { return F_ == o.F_ && c_ == o.c_; }
    bool operator!=(const FqPoly& o) const { return !(*this == o); }
    bool operator<(const FqPoly& o) const {  // degree, then the enumeration order
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

    std::string to_dense() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += coeff_token(F_, c_[i]);
        }
        return s;
    }

    static FqPoly parse_dense(const FqField& F, const std::string& text) {
        std::vector<felem> c;
        std::string tok;
        std::istringstream in(text);
        while (std::getline(in, tok, ',')) c.push_back(parse_coeff_token(F, tok));
        if (c.empty()) throw std::invalid_argument("FqPoly: empty dense literal");
        return FqPoly(F, std::move(c));
    }

    std::string to_human() const {
        if (F_.e() != 1) return to_dense();
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (!c_[i]) continue;
            if (!s.empty()) s += '+';
            if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
            if (i >= 1) {
                s += 'T';
                if (i >= 2) s += '^' + std::to_string(i);
            }
        }
        return s;
    }

    // accepts "T^3+T+1", "2*T^2-T", "0"; prime fields only
    static FqPoly parse_human(const FqField& F, const std::string& text) {
        if (F.e() != 1)
            throw std::invalid_argument("FqPoly: human-readable form requires a prime field");
        std::string s;
        for (char ch : text)
            if (!std::isspace((unsigned char)ch)) s += ch;
        if (s.empty()) throw std::invalid_argument("FqPoly: empty literal");
        FqPoly acc(F);
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
        while (i < s.size()) {
            std::size_t j = i;
            while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
            acc = acc + parse_term(F, s.substr(i, j - i), neg);
            if (j < s.size()) neg = s[j] == '-';
            i = j + 1;
            if (j < s.size() && j + 1 == s.size())
                throw std::invalid_argument("FqPoly: dangling sign");
        }
        return acc;
    }

private:
    struct raw_tag {};
    FqPoly(const FqField& F, raw_tag, std::vector<felem> c) : F_(F), c_(std::move(c)) { trim(); }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const FqPoly& o) const {
        if (F_ != o.F_) throw std::domain_error("FqPoly: mixed fields");
    }

    static std::string coeff_token(const FqField& F, felem v) {
        if (F.e() == 1) return std::to_string(v);
        std::string s;
        bool dotted = F.p() > 10;
        for (unsigned i = 0; i < F.e(); ++i) {
            if (dotted && i) s += '.';
            s += std::to_string(v % F.p());
            v = felem(v / F.p());
        }
        return s;
    }
    static felem parse_coeff_token(const FqField& F, const std::string& tok) {
        if (tok.empty()) throw std::invalid_argument("FqPoly: empty coefficient");
        if (F.e() == 1) {
            unsigned long v = std::stoul(tok);
            if (v >= F.q()) throw std::invalid_argument("FqPoly: coefficient out of range");
            return felem(v);
        }
        std::vector<unsigned> digits;
        if (F.p() > 10) {
            std::istringstream in(tok);
            std::string d;
            while (std::getline(in, d, '.')) digits.push_back(unsigned(std::stoul(d)));
        } else {
            for (char ch : tok) {
                if (ch < '0' || ch > '9')
                    throw std::invalid_argument("FqPoly: bad coefficient digit");
                digits.push_back(unsigned(ch - '0'));
            }
        }
        if (digits.size() != F.e())
            throw std::invalid_argument("FqPoly: coefficient needs exactly e digits");
        std::uint32_t v = 0, pw = 1;
        for (unsigned d : digits) {
            if (d >= F.p()) throw std::invalid_argument("FqPoly: digit out of range");
            v += d * pw;
            pw *= F.p();
        }
        return felem(v);
    }

    static FqPoly parse_term(const FqField& F, const std::string& term, bool neg) {
        if (term.empty()) throw std::invalid_argument("FqPoly: empty term");
        std::size_t tpos = term.find('T');
        felem c = 1;
        std::size_t expo = 0;
        if (tpos == std::string::npos) {
            c = F.from_int(std::stoll(term));
        } else {
            std::string cs = term.substr(0, tpos);
            if (!cs.empty() && cs.back() == '*') cs.pop_back();
            if (!cs.empty()) c = F.from_int(std::stoll(cs));
            std::string rest = term.substr(tpos + 1);
            if (rest.empty()) expo = 1;
            else if (rest[0] == '^') expo = std::stoul(rest.substr(1));
            else throw std::invalid_argument("FqPoly: bad term '" + term + "'");
        }
        if (neg) c = F.neg(c);
        std::vector<felem> v(expo + 1, 0);
        v[expo] = c;
        return FqPoly(F, std::move(v));
    }

    FqField F_;
    std::vector<felem> c_;
};

// monic of degree d at position t in the pinned enumeration order:
// the fastest-varying base-q digit of t is c_{d-1}, so c_0 is most significant
inline FqPoly monic_at(const FqField& F, unsigned d, std::uint64_t t) {
    std::vector<felem> c(d + 1, 0);
    c[d] = 1;
    for (unsigned i = 0; i < d; ++i) {
        c[d - 1 - i] = felem(t % F.q());
        t /= F.q();
    }
    return FqPoly(F, std::move(c));
}

inline std::uint64_t stratum_size(const FqField& F, unsigned d) {
    std::uint64_t n = 1;
    for (unsigned i = 0; i < d; ++i) n *= F.q();
    return n;
}

inline std::vector<FqPoly> monic_polys(const FqField& F, unsigned d) {
    std::uint64_t n = stratum_size(F, d);
    std::vector<FqPoly> out;
    out.reserve(n);
    for (std::uint64_t t = 0; t < n; ++t) out.push_back(monic_at(F, d, t));
    return out;
}

inline void for_each_monic(const FqField& F, unsigned d,
                           const std::function<void(const FqPoly&)>& fn) {
    std::uint64_t n = stratum_size(F, d);
    for (std::uint64_t t = 0; t < n; ++t) fn(monic_at(F, d, t));
}

inline bool is_irreducible(const FqPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    const FqField& F = f.field();
    for (unsigned d = 1; 2 * d <= unsigned(f.degree()); ++d) {
        std::uint64_t n = stratum_size(F, d);
        for (std::uint64_t t = 0; t < n; ++t)
            if (monic_at(F, d, t).divides(f)) return false;
    }
    return true;
}

inline std::vector<FqPoly> irreducible_monics(const FqField& F, unsigned d) {
    std::vector<FqPoly> out;
    std::uint64_t n = stratum_size(F, d);
    for (std::uint64_t t = 0; t < n; ++t) {
        FqPoly f = monic_at(F, d, t);
        if (is_irreducible(f)) out.push_back(f);
    }
    return out;
}

// prime-power factorization of a nonzero polynomial, factors ascending in
// the enumeration order; the unit (leading coefficient) is returned separately
struct FqFactorization {
    felem unit;
    std::vector<std::pair<FqPoly, unsigned>> factors;
};

inline FqFactorization factor(const FqPoly& a) {
    if (a.is_zero()) throw std::domain_error("factor: zero polynomial");
    const FqField& F = a.field();
    FqFactorization out{a.leading(), {}};
    FqPoly rem = a.scale(F.inv(a.leading()));
    for (unsigned d = 1; rem.degree() > 0; ++d) {
        if (2 * int(d) > rem.degree()) {
            out.factors.emplace_back(rem, 1);  // remaining factor is irreducible
            break;
        }
        std::uint64_t n = stratum_size(F, d);
        for (std::uint64_t t = 0; t < n && rem.degree() > 0; ++t) {
            FqPoly f = monic_at(F, d, t);
            unsigned mult = 0;
            while (true) {
                auto [quo, r] = rem.divmod(f);
                if (!r.is_zero()) break;
                rem = quo;
                ++mult;
            }
            if (mult) out.factors.emplace_back(f, mult);
            if (2 * int(d) > rem.degree()) break;
        }
    }
    return out;
}

}  // namespace fqzeta

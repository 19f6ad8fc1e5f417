#pragma once

// Arithmetic context for a finite field F_q, q = p^e, with p prime.
// Elements are stored as integers in [0, q): the base-p digits of the
// integer are the coordinates with respect to the power basis of the
// generator when e > 1, and the residue itself when e = 1.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqzeta {

using felem = std::uint16_t;

namespace detail {

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// dense little-endian polynomial arithmetic over F_p, used only to set up
// extension-field tables
using ppoly = std::vector<felem>;

inline ppoly ppoly_trim(ppoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline ppoly ppoly_mulmod(const ppoly& a, const ppoly& b, const ppoly& mod, unsigned p) {
    std::vector<unsigned> acc(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + unsigned(a[i]) * b[j]) % p;
    }
    // reduce by the monic modulus
    const std::size_t e = mod.size() - 1;
    for (std::size_t i = acc.size(); i-- > e;) {
        unsigned c = acc[i] % p;
        if (!c) continue;
        acc[i] = 0;
        for (std::size_t k = 0; k < e; ++k)
            acc[i - e + k] = (acc[i - e + k] + c * (p - mod[k] % p)) % p;
    }
    ppoly r(e, 0);
    for (std::size_t k = 0; k < e && k < acc.size(); ++k) r[k] = felem(acc[k] % p);
    return r;
}

inline bool ppoly_is_irreducible(const ppoly& f, unsigned p) {
    // f monic over F_p; check gcd-free against x^{p^k} - x for k <= deg/2
    const std::size_t e = f.size() - 1;
    if (e == 0) return false;
    ppoly x{0, 1};
    ppoly xp = x;
    auto gcd_deg = [&](ppoly a, ppoly b) {
        a = ppoly_trim(a);
        b = ppoly_trim(b);
        while (!b.empty()) {
            // a mod b, b monicized on the fly
            unsigned lead = b.back();
            unsigned linv = 1;
            for (unsigned t = 1; t < p; ++t)
                if (t * lead % p == 1) { linv = t; break; }
            while (a.size() >= b.size() && !a.empty()) {
                unsigned c = a.back() * linv % p;
                std::size_t sh = a.size() - b.size();
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[sh + i] = felem((a[sh + i] + c * (p - b[i] % p)) % p);
                a = ppoly_trim(a);
            }
            std::swap(a, b);
        }
        return a.size();  // 1 means unit gcd
    };
    for (std::size_t k = 1; 2 * k <= e; ++k) {
        // xp <- xp^p mod f
        ppoly t = xp;
        for (unsigned i = 1; i < p; ++i) t = ppoly_mulmod(t, xp, f, p);
        xp = t;
        ppoly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = felem((diff[1] + p - 1) % p);
        if (gcd_deg(f, diff) != 1) return false;
    }
    return true;
}

struct FqTables {
    unsigned p = 0;
    unsigned e = 1;
    std::uint32_t q = 0;
    std::vector<felem> modulus;       // monic, length e+1, empty when e == 1
    std::vector<felem> mul_table;     // q*q entries
    std::vector<felem> inv_table;     // q entries, inv_table[0] unused
    std::vector<felem> add_table;     // q*q entries
};

}  // namespace detail

class FqField {
public:
    explicit FqField(unsigned p) : FqField(p, {}) {}

    // modulus: monic irreducible over F_p of degree e >= 2, little-endian
    // coefficients in [0, p); empty modulus means the prime field
    FqField(unsigned p, const std::vector<felem>& modulus) {
        if (!detail::is_prime(p))
            throw std::invalid_argument("FqField: characteristic must be prime");
        auto t = std::make_shared<detail::FqTables>();
        t->p = p;
        if (modulus.empty()) {
            t->e = 1;
            t->q = p;
        } else {
            if (modulus.size() < 3 || modulus.back() != 1)
                throw std::invalid_argument("FqField: modulus must be monic of degree >= 2");
            for (felem c : modulus)
                if (c >= p) throw std::invalid_argument("FqField: modulus digit out of range");
            if (!detail::ppoly_is_irreducible(modulus, p))
                throw std::invalid_argument("FqField: modulus is reducible");
            t->e = unsigned(modulus.size() - 1);
            std::uint64_t q = 1;
            for (unsigned i = 0; i < t->e; ++i) {
                q *= p;
                if (q > 4096) throw std::invalid_argument("FqField: q too large (max 4096)");
            }
            t->q = std::uint32_t(q);
            t->modulus = modulus;
        }
        if (t->q > 4096) throw std::invalid_argument("FqField: q too large (max 4096)");
        build_tables(*t);
        tab_ = std::move(t);
    }

    unsigned p() const { return tab_->p; }
    unsigned e() const { return tab_->e; }
    std::uint32_t q() const { return tab_->q; }
    const std::vector<felem>& modulus() const { return tab_->modulus; }

    felem add(felem a, felem b) const { return tab_->add_table[std::size_t(a) * tab_->q + b]; }
    felem sub(felem a, felem b) const { return add(a, neg(b)); }
    felem neg(felem a) const {
        if (tab_->e == 1) return felem(a ? tab_->p - a : 0);
        felem r = 0;
        std::uint32_t pw = 1;
        felem x = a;
        for (unsigned i = 0; i < tab_->e; ++i) {
            felem d = felem(x % tab_->p);
            x = felem(x / tab_->p);
            if (d) r = felem(r + (tab_->p - d) * pw);
            pw = felem(pw * tab_->p);
        }
        return r;
    }
    felem mul(felem a, felem b) const { return tab_->mul_table[std::size_t(a) * tab_->q + b]; }
    felem inv(felem a) const {
        if (!a) throw std::domain_error("FqField: inverse of zero");
        return tab_->inv_table[a];
    }
    felem pow(felem a, long long k) const {
        if (k < 0) { a = inv(a); k = -k; }
        felem r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }
    felem frobenius(felem a) const { return pow(a, tab_->p); }

    // n mod p, embedded in the prime subfield
    felem from_int(long long n) const {
        long long m = n % (long long)tab_->p;
        if (m < 0) m += tab_->p;
        return felem(m);
    }

    bool operator==(const FqField& o) const {
        return tab_->p == o.tab_->p && tab_->e == o.tab_->e && tab_->modulus == o.tab_->modulus;
    }
    bool operator!=(const FqField& o) const { return !(*this == o); }

private:
    static void build_tables(detail::FqTables& t) {
        const std::uint32_t q = t.q;
        t.add_table.assign(std::size_t(q) * q, 0);
        t.mul_table.assign(std::size_t(q) * q, 0);
        t.inv_table.assign(q, 0);
        if (t.e == 1) {
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) {
                    t.add_table[std::size_t(a) * q + b] = felem((a + b) % q);
                    t.mul_table[std::size_t(a) * q + b] = felem(a * b % q);
                }
        } else {
            auto to_poly = [&](std::uint32_t v) {
                detail::ppoly c(t.e, 0);
                for (unsigned i = 0; i < t.e; ++i) { c[i] = felem(v % t.p); v /= t.p; }
                return c;
            };
            auto from_poly = [&](const detail::ppoly& c) {
                std::uint32_t v = 0, pw = 1;
                for (unsigned i = 0; i < t.e; ++i) { v += c[i] * pw; pw *= t.p; }
                return v;
            };
            for (std::uint32_t a = 0; a < q; ++a) {
                detail::ppoly pa = to_poly(a);
                for (std::uint32_t b = 0; b < q; ++b) {
                    detail::ppoly pb = to_poly(b), s(t.e, 0);
                    for (unsigned i = 0; i < t.e; ++i) s[i] = felem((pa[i] + pb[i]) % t.p);
                    t.add_table[std::size_t(a) * q + b] = felem(from_poly(s));
                    t.mul_table[std::size_t(a) * q + b] =
                        felem(from_poly(detail::ppoly_mulmod(pa, pb, t.modulus, t.p)));
                }
            }
        }
        for (std::uint32_t a = 1; a < q; ++a) {
            // brute scan is fine once at construction
            for (std::uint32_t b = 1; b < q; ++b)
                if (t.mul_table[std::size_t(a) * q + b] == 1) { t.inv_table[a] = felem(b); break; }
            if (!t.inv_table[a]) throw std::logic_error("FqField: table construction failed");
        }
    }

    std::shared_ptr<const detail::FqTables> tab_;
};

}  // namespace fqzeta

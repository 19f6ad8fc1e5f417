#pragma once

// Mahler calculus on Z_p with exact arithmetic mod p^N: Iwasawa power series
// as the measure algebra, the shift action on Mahler coefficient vectors,
// eigenfunctions x -> (1+m)^x, and finite-difference coefficient extraction.
//
// A MahlerFunction stores a finite Mahler polynomial sum c_k C(x,k); analytic
// functions enter through explicit truncation by the caller.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fqzeta {

class PadicInt {
public:
    PadicInt(unsigned p, unsigned N, long long value) : p_(p), N_(N) {
        if (p < 2) throw std::invalid_argument("PadicInt: p must be at least 2");
        mod_ = 1;
        for (unsigned i = 0; i < N; ++i) {
            if (mod_ > (std::uint64_t(1) << 62) / p) throw std::overflow_error("PadicInt: p^N too large");
            mod_ *= p;
        }
        long long r = value % (long long)mod_;
        if (r < 0) r += (long long)mod_;
        r_ = (std::uint64_t)r;
    }

    unsigned p() const { return p_; }
    unsigned N() const { return N_; }
    std::uint64_t modulus() const { return mod_; }
    std::uint64_t residue() const { return r_; }
    bool is_zero() const { return r_ == 0; }

    // p-adic valuation of the residue; N when the residue is 0 (meaning >= N)
    unsigned val() const {
        if (r_ == 0) return N_;
        unsigned v = 0;
        std::uint64_t x = r_;
        while (x % p_ == 0) { x /= p_; ++v; }
        return v;
    }

    PadicInt operator+(const PadicInt& o) const { check(o); return with((r_ + o.r_) % mod_); }
    PadicInt operator-(const PadicInt& o) const { check(o); return with((r_ + mod_ - o.r_) % mod_); }
    PadicInt operator-() const { return with(r_ ? mod_ - r_ : 0); }
    PadicInt operator*(const PadicInt& o) const {
        check(o);
        return with((std::uint64_t)((unsigned __int128)r_ * o.r_ % mod_));
    }
    PadicInt inv() const {
        if (r_ % p_ == 0) throw std::domain_error("PadicInt: not a unit");
        // extended Euclid on (r, mod)
        long long t0 = 0, t1 = 1;
        std::uint64_t a = mod_, b = r_;
        while (b) {
            std::uint64_t q = a / b;
            std::uint64_t tmp = a - q * b;
            a = b;
            b = tmp;
            long long tn = t0 - (long long)q * t1;
            t0 = t1;
            t1 = tn;
        }
        long long r = t0 % (long long)mod_;
        if (r < 0) r += (long long)mod_;
        return with((std::uint64_t)r);
    }
    PadicInt pow(unsigned long long k) const {
        PadicInt r = with(1 % mod_), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    bool operator==(const PadicInt& o) const {
        return p_ == o.p_ && N_ == o.N_ && r_ == o.r_;
    }
    bool operator!=(const PadicInt& o) const { return !(*this == o); }

private:
    PadicInt with(std::uint64_t r) const {
        PadicInt x = *this;
        x.r_ = r;
        return x;
    }
    void check(const PadicInt& o) const {
        if (p_ != o.p_ || N_ != o.N_) throw std::domain_error("PadicInt: mixed moduli");
    }

    unsigned p_, N_;
    std::uint64_t mod_;
    std::uint64_t r_;
};

// binomial row slice C(m, 0..upto) mod `mod`, built by Pascal additions only
inline std::vector<std::uint64_t> binom_row(std::uint64_t mod, std::uint64_t m, unsigned upto) {
    std::vector<std::uint64_t> row(std::size_t(upto) + 1, 0);
    row[0] = 1 % mod;
    for (std::uint64_t r = 1; r <= m; ++r)
        for (std::size_t k = std::size_t(std::min<std::uint64_t>(r, upto)); k >= 1; --k)
            row[k] = (row[k] + row[k - 1]) % mod;
    return row;
}

class MahlerFunction {
public:
    MahlerFunction(unsigned p, unsigned N, std::vector<PadicInt> coeffs)
        : p_(p), N_(N), c_(std::move(coeffs)) {
        for (const auto& x : c_)
            if (x.p() != p_ || x.N() != N_) throw std::domain_error("MahlerFunction: mixed moduli");
        trim();
    }
    static MahlerFunction zero(unsigned p, unsigned N) { return MahlerFunction(p, N, {}); }
    static MahlerFunction basis(unsigned p, unsigned N, unsigned k) {
        std::vector<PadicInt> c(std::size_t(k) + 1, PadicInt(p, N, 0));
        c[k] = PadicInt(p, N, 1);
        return MahlerFunction(p, N, std::move(c));
    }

    unsigned p() const { return p_; }
    unsigned N() const { return N_; }
    const std::vector<PadicInt>& coeffs() const { return c_; }
    PadicInt coeff(std::size_t k) const {
        return k < c_.size() ? c_[k] : PadicInt(p_, N_, 0);
    }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    MahlerFunction operator+(const MahlerFunction& o) const {
        check(o);
        std::vector<PadicInt> r;
        std::size_t n = std::max(c_.size(), o.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
        return MahlerFunction(p_, N_, std::move(r));
    }
    MahlerFunction scale(const PadicInt& s) const {
        std::vector<PadicInt> r;
        r.reserve(c_.size());
        for (const auto& x : c_) r.push_back(x * s);
        return MahlerFunction(p_, N_, std::move(r));
    }

    // shift the Mahler coefficients left j times: the action of X^j
    MahlerFunction shifted(unsigned j) const {
        if (j >= c_.size()) return zero(p_, N_);
        std::vector<PadicInt> r(c_.begin() + j, c_.end());
        return MahlerFunction(p_, N_, std::move(r));
    }

    // exact value at a non-negative integer point
    PadicInt value(std::uint64_t m) const {
        auto row = binom_row(PadicInt(p_, N_, 0).modulus(), m, c_.empty() ? 0u : unsigned(c_.size() - 1));
        PadicInt acc(p_, N_, 0);
        for (std::size_t k = 0; k < c_.size(); ++k)
            acc = acc + c_[k] * PadicInt(p_, N_, (long long)row[k]);
        return acc;
    }

    bool operator==(const MahlerFunction& o) const {
        return p_ == o.p_ && N_ == o.N_ && c_ == o.c_;
    }

private:
    void check(const MahlerFunction& o) const {
        if (p_ != o.p_ || N_ != o.N_) throw std::domain_error("MahlerFunction: mixed moduli");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    unsigned p_, N_;
    std::vector<PadicInt> c_;
};

class IwasawaSeries {
public:
    IwasawaSeries(unsigned p, unsigned N, unsigned D, std::vector<PadicInt> coeffs)
        : p_(p), N_(N), D_(D), c_(std::move(coeffs)) {
        if (c_.size() > std::size_t(D_) + 1)
            throw std::invalid_argument("IwasawaSeries: more coefficients than the truncation holds");
        for (const auto& x : c_)
            if (x.p() != p_ || x.N() != N_) throw std::domain_error("IwasawaSeries: mixed moduli");
        c_.resize(std::size_t(D_) + 1, PadicInt(p_, N_, 0));
    }
    static IwasawaSeries one(unsigned p, unsigned N, unsigned D) {
        return IwasawaSeries(p, N, D, {PadicInt(p, N, 1)});
    }
    static IwasawaSeries X(unsigned p, unsigned N, unsigned D) {
        return IwasawaSeries(p, N, D, {PadicInt(p, N, 0), PadicInt(p, N, 1)});
    }

    unsigned p() const { return p_; }
    unsigned N() const { return N_; }
    unsigned trunc_deg() const { return D_; }
    const std::vector<PadicInt>& coeffs() const { return c_; }
    PadicInt coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : PadicInt(p_, N_, 0);
    }
    int degree() const {
        for (int i = int(c_.size()) - 1; i >= 0; --i)
            if (!c_[std::size_t(i)].is_zero()) return i;
        return -1;
    }

    IwasawaSeries operator+(const IwasawaSeries& o) const {
        check(o);
        unsigned D = std::min(D_, o.D_);
        std::vector<PadicInt> r;
        for (std::size_t i = 0; i <= D; ++i) r.push_back(coeff(i) + o.coeff(i));
        return IwasawaSeries(p_, N_, D, std::move(r));
    }
    IwasawaSeries operator*(const IwasawaSeries& o) const {
        check(o);
        unsigned D = std::min(D_, o.D_);
        std::vector<PadicInt> r(std::size_t(D) + 1, PadicInt(p_, N_, 0));
        for (std::size_t i = 0; i <= D && i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; i + j <= D && j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return IwasawaSeries(p_, N_, D, std::move(r));
    }

    PadicInt eval(const PadicInt& m) const {
        PadicInt acc(p_, N_, 0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * m + c_[i];
        return acc;
    }

    bool operator==(const IwasawaSeries& o) const {
        return p_ == o.p_ && N_ == o.N_ && D_ == o.D_ && c_ == o.c_;
    }

private:
    void check(const IwasawaSeries& o) const {
        if (p_ != o.p_ || N_ != o.N_) throw std::domain_error("IwasawaSeries: mixed moduli");
    }

    unsigned p_, N_;
    unsigned D_;
    std::vector<PadicInt> c_;
};

// (1+X)^a truncated at degree D. Binomials are taken at the canonical
// representative of a; coefficients at index k are then accurate modulo
// p^{N - v_p(k!)} when the exponent is only known mod p^N.
inline IwasawaSeries dirac_series(const PadicInt& a, unsigned D) {
    auto row = binom_row(a.modulus(), a.residue(), D);
    std::vector<PadicInt> c;
    c.reserve(std::size_t(D) + 1);
    for (std::size_t k = 0; k <= D; ++k) c.emplace_back(a.p(), a.N(), (long long)row[k]);
    return IwasawaSeries(a.p(), a.N(), D, std::move(c));
}

// the action of the measure algebra on Mahler polynomials: X shifts
// coefficients left, general series act by linearity
inline MahlerFunction act(const IwasawaSeries& F, const MahlerFunction& f) {
    MahlerFunction acc = MahlerFunction::zero(f.p(), f.N());
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        if (F.coeff(i).is_zero()) continue;
        acc = acc + f.shifted(unsigned(i)).scale(F.coeff(i));
    }
    return acc;
}

// checks act(F, f_m) = F(m) f_m on Mahler coefficients 0..D, where
// f_m(x) = (1+m)^x has coefficient vector {m^k}; the input is extended
// internally past D so the shift does not starve the compared window
inline bool eigen_check(const IwasawaSeries& F, const PadicInt& m, unsigned D) {
    if (m.p() != F.p() || m.N() != F.N()) throw std::domain_error("eigen_check: mixed moduli");
    if (m.val() < 1) throw std::domain_error("eigen_check: eigenvalue point must satisfy v_p(m) >= 1");
    int dF = std::max(0, F.degree());
    unsigned ext = D + unsigned(dF);
    std::vector<PadicInt> c;
    PadicInt pw(m.p(), m.N(), 1);
    for (unsigned k = 0; k <= ext; ++k) {
        c.push_back(pw);
        pw = pw * m;
    }
    MahlerFunction fm(m.p(), m.N(), std::move(c));
    MahlerFunction lhs = act(F, fm);
    MahlerFunction rhs = fm.scale(F.eval(m));
    for (unsigned k = 0; k <= D; ++k)
        if (lhs.coeff(k) != rhs.coeff(k)) return false;
    return true;
}

// b_n = Delta^n f(0): Mahler coefficients from consecutive integer values
inline std::vector<PadicInt> mahler_from_values(std::vector<PadicInt> values) {
    std::vector<PadicInt> out;
    out.reserve(values.size());
    for (std::size_t n = 0; n < values.size(); ++n) {
        if (n) {
            for (std::size_t i = 0; i + n < values.size(); ++i)
                values[i] = values[i + 1] - values[i];
        }
        out.push_back(values[0]);
    }
    return out;
}

// tail series: index j holds the coefficient of X^{-j} (j = 0 kept)
inline std::vector<PadicInt> tate_tail_action(const IwasawaSeries& F,
                                              const std::vector<PadicInt>& g) {
    int dF = std::max(0, F.degree());
    int W = int(g.size()) - 1;
    int outW = W - dF;
    std::vector<PadicInt> out;
    for (int jp = 0; jp <= outW; ++jp) {
        PadicInt acc(F.p(), F.N(), 0);
        for (int i = 0; i <= dF; ++i)
            acc = acc + F.coeff(std::size_t(i)) * g[std::size_t(jp + i)];
        out.push_back(acc);
    }
    return out;
}

}  // namespace fqzeta

#pragma once

// Completion of F_q[T] at a finite place v = (f): residues mod f^N with
// tracked f-valuation, Teichmuller decomposition of units, exponentiation by
// S_v = Z_p x Z/(q^{d_v}-1), Euler-factor-removed special values, and the
// interpolation route through the very well distributed node sequence on
// A/f^N.  The coefficient field is k itself, so the embedding present in the
// general theory is the identity and residues mod f^N carry everything.

#include "lseries.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fqzeta {

namespace detail {

inline FqPoly powmod(FqPoly b, std::uint64_t e, const FqPoly& m) {
    FqPoly r = FqPoly::one(b.field());
    b = b % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

// extended Euclid; g must be coprime to m
inline FqPoly poly_inverse_mod(const FqPoly& g, const FqPoly& m) {
    const FqField& F = g.field();
    FqPoly r0 = m, r1 = g % m;
    FqPoly t0(F), t1 = FqPoly::one(F);
    while (!r1.is_zero()) {
        auto [quo, r2] = r0.divmod(r1);
        FqPoly t2 = t0 - quo * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.degree() != 0) throw std::domain_error("vadic: residue is not invertible");
    return t0.scale(F.inv(r0.leading())) % m;
}

// q^d with an overflow guard; place parameters stay well inside 64 bits
inline std::uint64_t residue_field_size(const FqField& F, unsigned d) {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < d; ++i) {
        if (s > (std::uint64_t(1) << 56) / F.q())
            throw std::domain_error("vadic: place degree too large");
        s *= F.q();
    }
    return s;
}

}  // namespace detail

// A_v-integer held as a residue mod f^N at the place v = (f)
class VadicResidue {
public:
    VadicResidue(FqPoly place, unsigned level, FqPoly val)
        : f_(std::move(place)), fn_(f_.field()), r_(std::move(val)), n_(level) {
        if (f_.degree() < 1 || !f_.is_monic() || !is_irreducible(f_))
            throw std::invalid_argument("VadicResidue: place must be monic irreducible");
        if (n_ == 0) throw std::invalid_argument("VadicResidue: level must be positive");
        fn_ = f_.pow(n_);
        r_ = r_ % fn_;
    }
    static VadicResidue zero(const FqPoly& f, unsigned N) { return {f, N, FqPoly(f.field())}; }
    static VadicResidue one(const FqPoly& f, unsigned N) {
        return {f, N, FqPoly::one(f.field())};
    }

    const FqField& field() const { return f_.field(); }
    const FqPoly& place() const { return f_; }
    unsigned place_degree() const { return unsigned(f_.degree()); }
    unsigned level() const { return n_; }
    const FqPoly& modulus() const { return fn_; }
    const FqPoly& value() const { return r_; }

    // size of the residue field A_v/(f), and the order of its unit group
    std::uint64_t residue_size() const {
        return detail::residue_field_size(field(), place_degree());
    }
    std::uint64_t unit_order() const { return residue_size() - 1; }

    // f-adic valuation, capped at the level (the zero residue reports N)
    unsigned valuation() const {
        if (r_.is_zero()) return n_;
        unsigned v = 0;
        FqPoly x = r_;
        while (v < n_) {
            auto [quo, rem] = x.divmod(f_);
            if (!rem.is_zero()) break;
            x = std::move(quo);
            ++v;
        }
        return v;
    }
    bool is_zero() const { return r_.is_zero(); }
    bool is_unit() const { return !(r_ % f_).is_zero(); }

    VadicResidue operator+(const VadicResidue& o) const {
        check(o);
        return with((r_ + o.r_) % fn_);
    }
    VadicResidue operator-(const VadicResidue& o) const {
        check(o);
        return with((r_ - o.r_) % fn_);
    }
    VadicResidue operator*(const VadicResidue& o) const {
        check(o);
        return with((r_ * o.r_) % fn_);
    }
    VadicResidue scale(felem s) const { return with(r_.scale(s) % fn_); }
    VadicResidue pow(std::uint64_t e) const { return with(detail::powmod(r_, e, fn_)); }
    VadicResidue inverse() const {
        if (!is_unit()) throw std::domain_error("VadicResidue: inverse of a non-unit");
        return with(detail::poly_inverse_mod(r_, fn_));
    }

    bool operator==(const VadicResidue& o) const {
        return f_ == o.f_ && n_ == o.n_ && r_ == o.r_;
    }
    bool operator!=(const VadicResidue& o) const { return !(*this == o); }

private:
    VadicResidue with(FqPoly v) const {
        VadicResidue c = *this;
        c.r_ = std::move(v);
        return c;
    }
    void check(const VadicResidue& o) const {
        if (f_ != o.f_ || n_ != o.n_)
            throw std::invalid_argument("VadicResidue: mixed places or levels");
    }

    FqPoly f_, fn_, r_;
    unsigned n_;
};

// exponent in S_v = Z_p x Z/(q^{d_v}-1); integers embed diagonally
struct SvExponent {
    PadicExponent y0;
    std::uint64_t y1;          // reduced mod unit_order
    std::uint64_t unit_order;  // q^{d_v} - 1

    SvExponent(PadicExponent y0_in, long long y1_in, std::uint64_t order)
        : y0(std::move(y0_in)), y1(0), unit_order(order) {
        if (order == 0) throw std::invalid_argument("SvExponent: unit order must be positive");
        long long m = (long long)order;
        y1 = std::uint64_t(((y1_in % m) + m) % m);
    }
    static SvExponent integer_point(unsigned p, long long j, std::uint64_t order) {
        return {PadicExponent(p, j), j, order};
    }
};

// omega with omega^{q^{d_v}} = omega mod f^N and omega = beta mod f, computed
// by iterated Frobenius; the 1-unit cofactor dies within N steps
inline VadicResidue teichmuller(const VadicResidue& beta) {
    if (!beta.is_unit()) throw std::domain_error("teichmuller: input is not a unit");
    std::uint64_t qv = beta.residue_size();
    VadicResidue x = beta;
    for (unsigned i = 0; i <= beta.level() + 1; ++i) {
        VadicResidue x2 = x.pow(qv);
        if (x2 == x) return x;
        x = std::move(x2);
    }
    throw std::logic_error("teichmuller: iteration failed to stabilize");
}

// beta^y = omega(beta)^{y_1} <beta>^{y_0}; the 1-unit part is the digit
// binomial series sum_k C(y_0,k) (<beta>-1)^k, finite mod f^N
inline VadicResidue vadic_pow(const VadicResidue& beta, const SvExponent& y) {
    const FqField& F = beta.field();
    if (F.p() != y.y0.p()) throw std::invalid_argument("vadic_pow: characteristic mismatch");
    if (y.unit_order != beta.unit_order())
        throw std::invalid_argument("vadic_pow: exponent belongs to a different place");
    VadicResidue omega = teichmuller(beta);
    VadicResidue head = omega.pow(y.y1);
    VadicResidue lam = beta * omega.inverse() - VadicResidue::one(beta.place(), beta.level());
    VadicResidue acc = VadicResidue::one(beta.place(), beta.level());
    VadicResidue term = acc;
    for (unsigned k = 1; k < beta.level(); ++k) {
        term = term * lam;
        if (term.is_zero()) break;
        unsigned c = binom_mod_p(y.y0, k);
        if (c) acc = acc + term.scale(F.from_int((long long)c));
    }
    return head * acc;
}

// m-th node of the very well distributed sequence on A/f^N: base-q^{d_v}
// digits of m, each mapped to its canonical degree-< d_v representative
inline FqPoly vadic_node(const FqPoly& f, std::uint64_t m) {
    const FqField& F = f.field();
    unsigned dv = unsigned(f.degree());
    std::uint64_t qv = detail::residue_field_size(F, dv);
    FqPoly acc(F);
    FqPoly fpow = FqPoly::one(F);
    while (m) {
        std::uint64_t dig = m % qv;
        std::vector<felem> cs;
        while (dig) {
            cs.push_back(felem(dig % F.q()));
            dig /= F.q();
        }
        acc = acc + FqPoly(F, std::move(cs)) * fpow;
        fpow = fpow * f;
        m /= qv;
    }
    return acc;
}

// partial v-adic value: coefficient of x_v^{-d} at index d, reduced mod f^N
struct VadicSpecialPoly {
    std::uint64_t j;
    FqPoly place;
    unsigned level;
    FqPoly modulus;
    std::vector<FqPoly> coeffs;
    unsigned d_max;
    bool stabilized;
    unsigned newton_terms = 0;  // interpolation terms used, 0 for the direct route

    int degree() const {
        for (int d = int(coeffs.size()) - 1; d >= 0; --d)
            if (!coeffs[std::size_t(d)].is_zero()) return d;
        return -1;
    }
};

namespace detail {

// shared stratum scan with the zero-run stop rule of the infinite place
template <typename StratumFn>
VadicSpecialPoly vadic_scan(const FqField& F, std::uint64_t j, const FqPoly& f, unsigned N,
                            const FqPoly& fn, const SpecialScan& opt, StratumFn&& stratum) {
    unsigned run_target = opt.zero_run ? opt.zero_run : F.q();
    std::vector<FqPoly> coeffs;
    unsigned zeros = 0;
    bool stab = false;
    unsigned limit = opt.d_max >= 0 ? unsigned(opt.d_max) : opt.hard_cap;
    for (unsigned d = 0; d <= limit; ++d) {
        if (pow_sat(F.q(), d) > (std::uint64_t(1) << 22))
            throw std::domain_error("vadic: stratum too large to enumerate");
        coeffs.push_back(stratum(d));
        zeros = coeffs.back().is_zero() ? zeros + 1 : 0;
        if (opt.d_max < 0 && zeros >= run_target) {
            stab = true;
            break;
        }
    }
    if (opt.d_max >= 0) stab = zeros >= run_target;
    unsigned top = unsigned(coeffs.size()) - 1;
    return {j, f, N, fn, std::move(coeffs), top, stab};
}

}  // namespace detail

// sum of b_a a^j over monic a of degree d coprime to f, reduced mod f^N;
// equals the coefficients of the infinite-place special polynomial with the
// v-Euler factor removed
inline VadicSpecialPoly vadic_special_value(const DirichletSeries& L, std::uint64_t j,
                                            const FqPoly& f, unsigned N, SpecialScan opt = {}) {
    const FqField& F = L.field();
    VadicResidue frame = VadicResidue::zero(f, N);
    const FqPoly fn = frame.modulus();
    if (opt.d_max < 0 && L.twist() < 0)
        throw std::invalid_argument("vadic_special_value: table-backed series need an explicit d_max");
    return detail::vadic_scan(F, j, f, N, fn, opt, [&](unsigned d) {
        FqPoly c(F);
        for_each_monic(F, d, [&](const FqPoly& a) {
            if ((a % f).is_zero()) return;
            FqPoly b = L.coefficient(a) % fn;
            if (b.is_zero()) return;
            c = (c + b * detail::powmod(a, j, fn)) % fn;
        });
        return c;
    });
}

namespace detail {

// Evaluation ladder for the normalized Newton family q_k = p_k / f^{w(k)}
// with w the base-q_v digit weight.  Every value q_k(x) lies in A_v because
// among any k of the nodes at least floor(k/q_v^i) agree with x mod f^i, and
// the exact polynomial divisions are carried with w(cap-1) spare powers of f.
struct VadicLadder {
    const FqPoly& f;
    std::uint64_t qv;
    FqPoly big;     // f^{N + w(cap-1)}
    FqPoly val;     // q_k(x), trustworthy mod f^{N + w(cap-1) - w(k)}
    unsigned k = 0;

    VadicLadder(const FqPoly& f_in, std::uint64_t qv_in, const FqPoly& big_in, const FqPoly& x)
        : f(f_in), qv(qv_in), big(big_in), val(FqPoly::one(f_in.field())), x_(x % big_in) {}

    // advance to q_{k+1} using the node u_k
    void step(const FqPoly& uk) {
        FqPoly t = (val * (x_ - uk)) % big;
        std::uint64_t m = k + 1;
        while (m % qv == 0) {
            auto [quo, rem] = t.divmod(f);
            if (!rem.is_zero()) throw std::logic_error("vadic: ladder lost divisibility");
            t = std::move(quo);
            m /= qv;
        }
        val = std::move(t);
        ++k;
    }

private:
    FqPoly x_;
};

}  // namespace detail

// Interpolation route at v.  The integrand chi(x) x^j is split through the
// Teichmuller decomposition and expanded over the very well distributed node
// sequence in the normalized family q_k = p_k / f^{w(k)}, whose values at the
// nodes lead with units, so the triangular solve never divides by f.  The
// term count grows adaptively until the expansion reproduces the integrand on
// the whole residue ring (checked exhaustively); pairing the coefficients
// with the per-stratum measure data sum_a b_a q_k(a) then equals the direct
// restricted summation.  newton_depth > 0 asks for at least that many terms;
// requests beyond the q_v^N distinct residues are rejected.
inline VadicSpecialPoly vadic_vwd_and_partial(const FqPoly& f, unsigned N,
                                              const CongruenceCondition& cond,
                                              const DirichletSeries& L, std::uint64_t j,
                                              SpecialScan opt = {}, unsigned newton_depth = 0) {
    const FqField& F = L.field();
    VadicResidue frame = VadicResidue::zero(f, N);
    const FqPoly fn = frame.modulus();
    if (cond.has_infinite())
        throw std::invalid_argument("vadic route: condition must be supported at the place");
    for (const auto& fc : cond.finite())
        if (fc.base != f || fc.exponent > N)
            throw std::invalid_argument("vadic route: condition modulus must divide f^N");
    if (opt.d_max < 0 && L.twist() < 0)
        throw std::invalid_argument("vadic route: table-backed series need an explicit d_max");

    std::uint64_t qv = frame.residue_size();
    std::uint64_t M = 1;  // number of residues mod f^N
    for (unsigned i = 0; i < N; ++i) {
        if (M > (std::uint64_t(1) << 12) / qv + 1) { M = (std::uint64_t(1) << 12) + 1; break; }
        M *= qv;
    }
    if (M > (std::uint64_t(1) << 12))
        throw std::domain_error("vadic route: residue ring too large to interpolate");
    if (newton_depth > M)
        throw std::invalid_argument(
            "vadic route: level insufficient for the requested Newton depth");
    SvExponent y = SvExponent::integer_point(F.p(), (long long)j, qv - 1);

    auto value_of = [&](const FqPoly& x) -> FqPoly {
        if ((x % f).is_zero()) return FqPoly(F);
        for (const auto& fc : cond.finite())
            if (!((x - fc.residue) % fc.modulus).is_zero()) return FqPoly(F);
        return vadic_pow(VadicResidue(f, N, x), y).value();
    };

    std::vector<FqPoly> nodes, gval;
    nodes.reserve(std::size_t(M));
    gval.reserve(std::size_t(M));
    for (std::uint64_t m = 0; m < M; ++m) {
        nodes.push_back(vadic_node(f, m));
        gval.push_back(value_of(nodes.back()));
    }

    std::vector<FqPoly> b;  // normalized Newton coefficients mod f^N
    unsigned cap = unsigned(std::min<std::uint64_t>(M, std::max(16u, newton_depth)));
    for (;;) {
        FqPoly big = f.pow(std::uint64_t(N) +
                           std::uint64_t(NewtonBasis::weight(unsigned(qv), cap ? cap - 1 : 0)));
        std::vector<detail::VadicLadder> lad;
        lad.reserve(cap);
        for (unsigned m = 0; m < cap; ++m) lad.emplace_back(f, qv, big, nodes[m]);
        std::vector<FqPoly> r(gval.begin(), gval.begin() + cap);
        b.clear();
        for (unsigned k = 0; k < cap; ++k) {
            FqPoly lead = lad[k].val % fn;  // q_k(u_k), a unit
            FqPoly bk = (r[k] * detail::poly_inverse_mod(lead, fn)) % fn;
            for (unsigned m = k + 1; m < cap; ++m) {
                r[m] = (r[m] - bk * (lad[m].val % fn)) % fn;
                lad[m].step(nodes[k]);
            }
            b.push_back(std::move(bk));
        }
        while (!b.empty() && b.back().is_zero()) b.pop_back();
        if (b.size() < newton_depth) b.resize(newton_depth, FqPoly(F));

        // the expansion must close on every residue, not just the solve nodes
        FqPoly wide = f.pow(std::uint64_t(N) +
                            std::uint64_t(NewtonBasis::weight(
                                unsigned(qv), b.empty() ? 0 : unsigned(b.size()) - 1)));
        bool closed = true;
        for (std::uint64_t m = 0; m < M && closed; ++m) {
            detail::VadicLadder lx(f, qv, wide, nodes[m]);
            FqPoly s(F);
            for (unsigned k = 0; k < b.size(); ++k) {
                s = (s + b[k] * (lx.val % fn)) % fn;
                if (k + 1 < b.size()) lx.step(nodes[k]);
            }
            if (s != gval[m]) closed = false;
        }
        if (closed) break;
        if (cap >= M)
            throw std::logic_error("vadic route: interpolation failed to close");
        cap = unsigned(std::min<std::uint64_t>(M, std::uint64_t(cap) * 4));
    }
    unsigned terms = unsigned(b.size());

    FqPoly wide = f.pow(std::uint64_t(N) +
                        std::uint64_t(NewtonBasis::weight(unsigned(qv),
                                                          terms ? terms - 1 : 0)));
    VadicSpecialPoly out = detail::vadic_scan(F, j, f, N, fn, opt, [&](unsigned d) {
        // measure coefficients of the stratum against the normalized family
        std::vector<FqPoly> mkd(terms, FqPoly(F));
        for_each_monic(F, d, [&](const FqPoly& am) {
            FqPoly ba = L.coefficient(am) % fn;
            if (ba.is_zero()) return;
            detail::VadicLadder lx(f, qv, wide, am);
            for (unsigned k = 0; k < terms; ++k) {
                mkd[k] = (mkd[k] + ba * (lx.val % fn)) % fn;
                if (k + 1 < terms) lx.step(nodes[k]);
            }
        });
        FqPoly c(F);
        for (unsigned k = 0; k < terms; ++k) c = (c + b[k] * mkd[k]) % fn;
        return c;
    });
    out.newton_terms = terms;
    return out;
}

}  // namespace fqzeta

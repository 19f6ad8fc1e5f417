#pragma once

// Dirichlet series over F_q[T]: power sums over congruence strata, special
// polynomials z(x,-j), evaluation on the character space, the canonical
// measure family, a measure-side route to partial series, Euler products,
// and degree-growth reports.
//
// Stratum sums are independent across degrees and are reduced in degree order,
// so concurrent stratum evaluation stays deterministic.

#include "measure.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fqzeta {

// largest e >= 0 with q^e <= m (m >= 1)
inline unsigned ilog_base(unsigned q, std::uint64_t m) {
    unsigned e = 0;
    std::uint64_t p = 1;
    while (m / q >= p) {
        p *= q;
        ++e;
    }
    return e;
}

namespace detail {

inline std::uint64_t pow_sat(std::uint64_t q, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > (std::numeric_limits<std::uint64_t>::max)() / q)
            return (std::numeric_limits<std::uint64_t>::max)();
        r *= q;
    }
    return r;
}

// f(T^s)
inline FqPoly stretch(const FqPoly& f, std::uint64_t s) {
    if (f.is_zero() || s == 1) return f;
    std::vector<felem> c(std::size_t(std::uint64_t(f.degree()) * s + 1), 0);
    for (int i = 0; i <= f.degree(); ++i) c[std::size_t(std::uint64_t(i) * s)] = f.coeff(std::size_t(i));
    return FqPoly(f.field(), std::move(c));
}

// f^e using f(T)^q = f(T^q) (the coefficients are fixed by x -> x^q)
inline FqPoly frobenius_pow(const FqPoly& f, std::uint64_t e) {
    const FqField& F = f.field();
    if (e == 0) return FqPoly::one(F);
    if (f.is_zero()) return FqPoly::zero(F);
    unsigned q = F.q();
    FqPoly r = FqPoly::one(F);
    std::uint64_t scale = 1;
    while (e) {
        unsigned dig = unsigned(e % q);
        if (dig) {
            FqPoly fs = stretch(f, scale);
            for (unsigned t = 0; t < dig; ++t) r = r * fs;
        }
        e /= q;
        scale *= q;
    }
    return r;
}

// Power sums s_k(d) = sum of w^k over the polynomials of degree < d (0^0 = 1),
// via the splitting {deg < d} = {deg < d-1} + F_q T^{d-1}:
//   s_k(d) = - sum_{i >= 1, (q-1)|i} C(k,i) T^{(d-1)i} s_{k-i}(d-1),
// together with the vanishing s_k(d) = 0 for 0 < k < q^d - 1 and s_0(d) = 0
// for d >= 1 (the subgroup has q^d elements).
class PowerSumKernel {
public:
    explicit PowerSumKernel(const FqField& F) : F_(F) {}

    const FqField& field() const { return F_; }

    const FqPoly& subgroup_sum(unsigned d, std::uint64_t k) {
        if (memo_.size() <= d) memo_.resize(d + 1);
        auto it = memo_[d].find(k);
        if (it != memo_[d].end()) return it->second;
        return memo_[d].emplace(k, compute(d, k)).first->second;
    }

    // sum over v of degree < m of (beta + g v)^j
    FqPoly coset_sum(const FqPoly& beta, const FqPoly& g, unsigned m, std::uint64_t j) {
        if (m == 0) return frobenius_pow(beta, j);
        unsigned q = F_.q();
        std::uint64_t kmin = pow_sat(q, m) == (std::numeric_limits<std::uint64_t>::max)()
                                 ? (std::numeric_limits<std::uint64_t>::max)()
                                 : pow_sat(q, m) - 1;
        FqPoly acc = FqPoly::zero(F_);
        bool g_trivial = g.degree() == 0 && g.is_monic();
        for (std::uint64_t k = kmin; k <= j && k > 0; k += (q - 1)) {
            unsigned bc = binom_mod_p(F_.p(), j, k);
            if (bc == 0) continue;
            const FqPoly& sk = subgroup_sum(m, k);
            if (sk.is_zero()) continue;
            FqPoly term = frobenius_pow(beta, j - k) * sk;
            if (!g_trivial) term = term * frobenius_pow(g, k);
            if (bc != 1) term = term.scale(F_.from_int((long long)bc));
            acc = acc + term;
        }
        return acc;
    }

private:
    FqPoly compute(unsigned d, std::uint64_t k) {
        if (d == 0) return k == 0 ? FqPoly::one(F_) : FqPoly::zero(F_);
        if (k == 0) return FqPoly::zero(F_);
        unsigned q = F_.q();
        if (k % (q - 1) != 0) return FqPoly::zero(F_);
        std::uint64_t qd = pow_sat(q, d);
        if (qd != (std::numeric_limits<std::uint64_t>::max)() && k < qd - 1)
            return FqPoly::zero(F_);
        FqPoly acc = FqPoly::zero(F_);
        for (std::uint64_t i = q - 1; i <= k; i += (q - 1)) {
            unsigned bc = binom_mod_p(F_.p(), k, i);
            if (bc == 0) continue;
            const FqPoly& lower = subgroup_sum(d - 1, k - i);
            if (lower.is_zero()) continue;
            FqPoly term = lower.shift(std::size_t((d - 1) * i));
            if (bc != 1) term = term.scale(F_.from_int((long long)bc));
            acc = acc + term;
        }
        return -acc;
    }

    FqField F_;
    std::vector<std::map<std::uint64_t, FqPoly>> memo_;
};

}  // namespace detail

struct FiniteCondition {
    FqPoly base;      // monic, degree >= 1
    unsigned exponent;
    FqPoly residue;   // reduced modulo base^exponent
    FqPoly modulus;   // base^exponent
};

// Congruence data for strata of monic polynomials: finitely many conditions
// a = residue (mod base^exponent) plus at most one condition at the infinite
// place, <a> = alpha (mod u^level) with alpha a 1-unit.
class CongruenceCondition {
public:
    CongruenceCondition() = default;

    CongruenceCondition& add_finite(const FqPoly& f, unsigned n, const FqPoly& alpha) {
        if (!f.is_monic() || f.degree() < 1)
            throw std::invalid_argument("CongruenceCondition: base must be monic of degree >= 1");
        if (n < 1) throw std::invalid_argument("CongruenceCondition: exponent must be >= 1");
        FqPoly m = f.pow(n);
        finite_.push_back({f, n, alpha % m, m});
        return *this;
    }

    CongruenceCondition& set_infinite(unsigned level, const LaurentSeries& alpha) {
        if (inf_) throw std::invalid_argument("CongruenceCondition: only one infinite condition");
        if (level < 1) throw std::invalid_argument("CongruenceCondition: level must be >= 1");
        if (!alpha.is_exact() && alpha.precision() < int(level))
            throw std::invalid_argument("CongruenceCondition: residue precision below level");
        if (alpha.known_zero() || alpha.val() != 0 || alpha.coeff(0) != 1)
            throw std::invalid_argument("CongruenceCondition: infinite residue must be a 1-unit");
        inf_.emplace(level, alpha);
        return *this;
    }

    const std::vector<FiniteCondition>& finite() const { return finite_; }
    bool has_infinite() const { return inf_.has_value(); }
    unsigned infinite_level() const { return inf_ ? inf_->first : 0; }
    const LaurentSeries& infinite_residue() const {
        if (!inf_) throw std::domain_error("CongruenceCondition: no infinite condition");
        return inf_->second;
    }
    bool is_vacuous() const { return finite_.empty() && !inf_; }

    bool satisfied(const FqPoly& a) const {
        if (!a.is_monic()) throw std::invalid_argument("CongruenceCondition: argument must be monic");
        for (const auto& c : finite_)
            if (!((a - c.residue) % c.modulus).is_zero()) return false;
        if (inf_) {
            int d = a.degree();
            for (unsigned i = 0; i < inf_->first; ++i) {
                felem dig = (int(i) <= d) ? a.coeff(std::size_t(d - int(i))) : felem(0);
                if (dig != inf_->second.coeff(int(i))) return false;
            }
        }
        return true;
    }

private:
    std::vector<FiniteCondition> finite_;
    std::optional<std::pair<unsigned, LaurentSeries>> inf_;
};

// A Dirichlet series given by its coefficient map on monics, with a declared
// coefficient degree bound deg b_a <= slope * deg a + offset governing the
// half-plane of absolute convergence.
class DirichletSeries {
public:
    static DirichletSeries zeta(const FqField& F) { return DirichletSeries(F, 0, "zeta"); }
    static DirichletSeries carlitz(const FqField& F) { return DirichletSeries(F, 1, "carlitz"); }
    static DirichletSeries power_twist(const FqField& F, unsigned t) {
        return DirichletSeries(F, int(t), "twist" + std::to_string(t));
    }
    static DirichletSeries from_table(const FqField& F, std::map<FqPoly, FqPoly> table,
                                      long long slope, long long offset, std::string name) {
        DirichletSeries L(F, -1, std::move(name));
        L.h_ = slope;
        L.c_ = offset;
        L.table_ = std::make_shared<const std::map<FqPoly, FqPoly>>(std::move(table));
        return L;
    }

    const FqField& field() const { return F_; }
    int twist() const { return twist_; }  // >= 0 when b_a = a^twist
    long long degree_slope() const { return h_; }
    long long degree_offset() const { return c_; }
    const std::string& name() const { return name_; }

    FqPoly coefficient(const FqPoly& a) const {
        if (twist_ >= 0) return detail::frobenius_pow(a, std::uint64_t(twist_));
        auto it = table_->find(a);
        if (it == table_->end())
            throw std::out_of_range("DirichletSeries: coefficient table does not cover " +
                                    a.to_human());
        return it->second;
    }

private:
    DirichletSeries(const FqField& F, int twist, std::string name)
        : F_(F), twist_(twist), h_(twist >= 0 ? twist : 0), c_(0), name_(std::move(name)) {}

    FqField F_;
    int twist_;
    long long h_, c_;
    std::string name_;
    std::shared_ptr<const std::map<FqPoly, FqPoly>> table_;
};

// Direct exact enumeration of sum b_a a^j over the monics of degree d meeting
// the condition.  This is the reference route; the kernel path below must
// agree with it wherever both apply.
inline FqPoly power_sum(const DirichletSeries& L, unsigned d, std::uint64_t j,
                        const CongruenceCondition& cond = CongruenceCondition()) {
    const FqField& F = L.field();
    if (stratum_size(F, d) > (std::uint64_t(1) << 22))
        throw std::invalid_argument("power_sum: stratum too large for direct enumeration");
    FqPoly acc = FqPoly::zero(F);
    for_each_monic(F, d, [&](const FqPoly& a) {
        if (!cond.satisfied(a)) return;
        acc = acc + L.coefficient(a) * detail::frobenius_pow(a, j);
    });
    return acc;
}

struct SpecialPoly {
    std::uint64_t j = 0;
    std::vector<FqPoly> coeffs;  // coefficient of x^{-d} at index d
    unsigned d_max = 0;          // strata scanned (coeffs.size() == d_max + 1)
    bool stabilized = false;

    int degree() const {
        for (std::size_t i = coeffs.size(); i-- > 0;)
            if (!coeffs[i].is_zero()) return int(i);
        return -1;
    }
    long long max_T_degree() const {
        long long m = -1;
        for (const auto& c : coeffs) m = std::max(m, (long long)c.degree());
        return m;
    }
};

struct SpecialScan {
    int d_max = -1;        // < 0: extend until zero_run consecutive zero strata
    unsigned zero_run = 0; // 0: use q
    unsigned hard_cap = 64;
};

namespace detail {

inline bool kernel_applicable(const CongruenceCondition& cond) {
    if (cond.finite().size() > 1) return false;
    if (cond.finite().size() == 1 && cond.has_infinite()) return false;
    return true;
}

// One stratum of sum a^{jj} over monics of degree d meeting the condition,
// through subgroup power sums.  The stratum is an affine coset beta + g W_m:
// no condition gives beta = T^d, W_d; an infinite condition pins the top
// digits of a; a single finite condition substitutes a = modulus*g + residue.
inline FqPoly kernel_stratum(PowerSumKernel& K, unsigned d, std::uint64_t jj,
                             const CongruenceCondition& cond) {
    const FqField& F = K.field();
    if (cond.finite().empty()) {
        FqPoly beta = FqPoly::T(F).pow(d);
        unsigned pinned = cond.has_infinite() ? cond.infinite_level() - 1 : 0;
        if (pinned > 0) {
            const LaurentSeries& alpha = cond.infinite_residue();
            for (unsigned i = 1; i <= pinned && i <= d; ++i) {
                felem dig = alpha.coeff(int(i));
                if (dig) beta = beta + FqPoly::constant(F, dig).shift(std::size_t(d - i));
            }
            for (unsigned i = d + 1; i <= pinned; ++i)
                if (alpha.coeff(int(i)) != 0) return FqPoly::zero(F);
        }
        unsigned m = d >= pinned ? d - pinned : 0;
        return K.coset_sum(beta, FqPoly::one(F), m, jj);
    }

    const FiniteCondition& fc = cond.finite()[0];
    unsigned m = unsigned(fc.modulus.degree());
    if (d < m) {
        // the residue is the only candidate
        if (fc.residue.degree() == int(d) && fc.residue.is_monic())
            return frobenius_pow(fc.residue, jj);
        return FqPoly::zero(F);
    }
    // a = modulus*g + residue over monic g of degree d - m:
    // sum_k C(jj,k) residue^{jj-k} modulus^k * (monic stratum sum of g^k)
    FqPoly acc = FqPoly::zero(F);
    for (std::uint64_t k = 0; k <= jj; ++k) {
        if (fc.residue.is_zero() && k != jj) continue;
        unsigned bc = binom_mod_p(F.p(), jj, k);
        if (bc == 0) continue;
        FqPoly inner = K.coset_sum(FqPoly::T(F).pow(d - m), FqPoly::one(F), d - m, k);
        if (inner.is_zero()) continue;
        FqPoly term = frobenius_pow(fc.residue, jj - k) * frobenius_pow(fc.modulus, k) * inner;
        if (bc != 1) term = term.scale(F.from_int((long long)bc));
        acc = acc + term;
    }
    return acc;
}

inline SpecialPoly special_scan(const DirichletSeries& L, std::uint64_t j,
                                const CongruenceCondition& cond, const SpecialScan& opt,
                                PowerSumKernel* shared_kernel) {
    const FqField& F = L.field();
    unsigned run_target = opt.zero_run ? opt.zero_run : F.q();
    bool fast = L.twist() >= 0 && kernel_applicable(cond);
    if (opt.d_max < 0 && L.twist() < 0)
        throw std::invalid_argument(
            "special_polynomial: table-backed series need an explicit d_max");
    PowerSumKernel local(F);
    PowerSumKernel& K = shared_kernel ? *shared_kernel : local;
    std::uint64_t jj = j + std::uint64_t(std::max(0, L.twist()));

    std::vector<FqPoly> coeffs;
    unsigned zeros = 0;
    bool stab = false;
    unsigned limit = opt.d_max >= 0 ? unsigned(opt.d_max) : opt.hard_cap;
    for (unsigned d = 0; d <= limit; ++d) {
        FqPoly s = fast ? kernel_stratum(K, d, jj, cond) : power_sum(L, d, j, cond);
        coeffs.push_back(std::move(s));
        zeros = coeffs.back().is_zero() ? zeros + 1 : 0;
        if (opt.d_max < 0 && zeros >= run_target) {
            stab = true;
            break;
        }
    }
    if (opt.d_max >= 0) stab = zeros >= run_target;
    SpecialPoly z;
    z.j = j;
    z.d_max = unsigned(coeffs.size()) - 1;
    z.coeffs = std::move(coeffs);
    z.stabilized = stab;
    return z;
}

}  // namespace detail

// z(x,-j): the polynomial in x^{-1} whose x^{-d} coefficient is the
// degree-d conditioned power sum of b_a a^j.  With d_max < 0 the scan extends
// until `zero_run` consecutive zero strata (default q) or hard_cap, flagging
// the result accordingly.
inline SpecialPoly special_polynomial(const DirichletSeries& L, std::uint64_t j,
                                      const CongruenceCondition& cond = CongruenceCondition(),
                                      const SpecialScan& opt = SpecialScan()) {
    return detail::special_scan(L, j, cond, opt, nullptr);
}

struct SPoint {
    LaurentSeries x;
    PadicExponent y;
};

struct DirichletValue {
    LaurentSeries value;
    long long tail_floor;
    bool convergent;
};

// Truncated evaluation sum_{deg a <= D} b_a x^{-deg a} <a>^{-y}.  The dropped
// strata have valuation at least (D+1)(-v(x) - slope) - offset, which is the
// reported tail floor; the value is cut to it when positive.
inline DirichletValue dirichlet_eval(const DirichletSeries& L, const SPoint& s, unsigned D,
                                     const CongruenceCondition& cond = CongruenceCondition()) {
    const FqField& F = L.field();
    long long mv = -(long long)s.x.val();
    long long gap = mv - L.degree_slope();
    bool conv = gap > 0;
    long long tail = (long long)(D + 1) * gap - L.degree_offset();
    int prec = int(std::max<long long>(tail, 1)) + 4;

    bool exact_y = s.y.is_exact_integer();
    long long yi = exact_y ? s.y.integer_value() : 0;
    PadicExponent ny = -s.y;

    LaurentSeries xinv = s.x.inverse(prec + 4);
    LaurentSeries xp = LaurentSeries::one(F);
    LaurentSeries acc = LaurentSeries::zero(F);
    for (unsigned d = 0; d <= D; ++d) {
        if (stratum_size(F, d) > (std::uint64_t(1) << 22))
            throw std::invalid_argument("dirichlet_eval: stratum too large for enumeration");
        LaurentSeries str = LaurentSeries::zero(F);
        for_each_monic(F, d, [&](const FqPoly& a) {
            if (!cond.satisfied(a)) return;
            LaurentSeries one_unit = LaurentSeries::from_poly(a).shifted(int(d));
            LaurentSeries pw = exact_y ? one_unit.pow(-yi, yi > 0 ? prec + 4 : 0)
                                       : one_unit_pow(one_unit, ny, prec + 4);
            str = str + LaurentSeries::from_poly(L.coefficient(a)) * pw;
        });
        acc = acc + xp * str;
        xp = xp * xinv;
    }
    LaurentSeries value = conv ? acc.truncated(int(tail)) : acc;
    return {std::move(value), tail, conv};
}

struct CanonicalMeasure {
    Measure mu;
    long long tail_floor;
    bool convergent;
};

// The measure sum_{deg a <= D} b_a x^{-deg a} dirac(<a>) as Newton-basis
// coefficients b_n = integral of Q_n, truncated to the stratum tail floor.
inline CanonicalMeasure canonical_measure(const NewtonBasis& B, const DirichletSeries& L,
                                          const LaurentSeries& x, std::size_t n_max,
                                          unsigned D) {
    const FqField& F = B.field();
    long long mv = -(long long)x.val();
    long long gap = mv - L.degree_slope();
    bool conv = gap > 0;
    long long tail = (long long)(D + 1) * gap - L.degree_offset();
    int prec = int(std::max<long long>(tail, 1)) + 4;

    LaurentSeries xinv = x.inverse(prec + 4);
    LaurentSeries xp = LaurentSeries::one(F);
    std::vector<LaurentSeries> b(n_max + 1, LaurentSeries::zero(F));
    for (unsigned d = 0; d <= D; ++d) {
        if (stratum_size(F, d) > (std::uint64_t(1) << 22))
            throw std::invalid_argument("canonical_measure: stratum too large for enumeration");
        for_each_monic(F, d, [&](const FqPoly& a) {
            LaurentSeries one_unit = LaurentSeries::from_poly(a).shifted(int(d));
            LaurentSeries wgt = LaurentSeries::from_poly(L.coefficient(a)) * xp;
            auto qv = basis_values(B, BasisTag::newton, one_unit, n_max + 1);
            for (std::size_t n = 0; n <= n_max; ++n) b[n] = b[n] + wgt * qv[n];
        });
        xp = xp * xinv;
    }
    if (conv)
        for (auto& c : b) c = c.truncated(int(tail));
    return {Measure(F, BasisTag::newton, std::move(b)), tail, conv};
}

// Rows n = 0..n_max of the measure coefficients as polynomials in x^{-1}:
// row[n][d] = sum_{j <= n} q_{n,j} u^{jd} S_d(j), with q_{n,j} the monomial
// coefficients of Q_n and S_d(j) the unconditioned power sums.  Equivalently
// row[n][d] = sum over monic a of degree d of b_a Q_n(<a>).
inline std::vector<std::vector<LaurentSeries>> measure_coefficient_polys(
    const NewtonBasis& B, const DirichletSeries& L, std::size_t n_max,
    const SpecialScan& opt = SpecialScan()) {
    const FqField& F = B.field();
    detail::PowerSumKernel K(F);
    std::vector<SpecialPoly> z;
    z.reserve(n_max + 1);
    for (std::uint64_t j = 0; j <= n_max; ++j)
        z.push_back(detail::special_scan(L, j, CongruenceCondition(), opt, &K));
    int d_all = 0;
    for (const auto& zz : z) d_all = std::max(d_all, zz.degree());

    std::vector<std::vector<LaurentSeries>> rows;
    rows.reserve(n_max + 1);
    TateSeries p = TateSeries::one(F);
    for (std::size_t n = 0; n <= n_max; ++n) {
        std::vector<LaurentSeries> row(std::size_t(d_all) + 1, LaurentSeries::zero(F));
        for (std::size_t jj = 0; jj <= n; ++jj) {
            LaurentSeries qnj = p.coeff(int(jj)).shifted(-int(B.weight(n)));
            if (qnj.known_zero()) continue;
            for (int d = 0; d <= z[jj].degree(); ++d) {
                const FqPoly& S = z[jj].coeffs[std::size_t(d)];
                if (S.is_zero()) continue;
                row[std::size_t(d)] =
                    row[std::size_t(d)] +
                    qnj * LaurentSeries::from_poly(S).shifted(int(jj) * d);
            }
        }
        rows.push_back(std::move(row));
        if (n < n_max) {
            TateSeries lin(F, {-B.point(std::uint64_t(n)), LaurentSeries::one(F)});
            p = p * lin;
        }
    }
    return rows;
}

struct MeasureRouteResult {
    SpecialPoly poly;          // strata 0..exact_depth
    unsigned exact_depth = 0;  // strata whose support is fully interpolated
    unsigned requested_depth = 0;
    std::size_t n_used = 0;    // Newton coefficients consumed
    bool certified = false;    // exact_depth covers the request and all
                               // coefficients rounded to A cleanly
};

// Partial series at y = -j through the infinite-place measure: expand
// f(z) = [z = alpha (mod u^level)] z^j in the Newton basis from its values at
// the interpolation points, then pair against the canonical measure stratum
// by stratum.  Every support point <a> with deg a <= depth is an
// interpolation point once q^{depth+1} values are used, which makes those
// strata exact; n_cap bounds that count, and the affordable depth is reported.
inline MeasureRouteResult partial_via_measure(const NewtonBasis& B, const DirichletSeries& L,
                                              const CongruenceCondition& cond, std::uint64_t j,
                                              int depth = -1, std::size_t n_cap = 1024) {
    const FqField& F = B.field();
    unsigned q = F.q();
    if (!cond.finite().empty())
        throw std::invalid_argument(
            "partial_via_measure: finite-place conditions are handled by direct summation or "
            "the v-adic route, not the infinite-place measure");
    if (depth < 0 && L.twist() < 0)
        throw std::invalid_argument("partial_via_measure: table-backed series need a depth");
    unsigned lvl = cond.has_infinite() ? cond.infinite_level() : 0;

    unsigned wanted =
        depth >= 0 ? unsigned(depth)
                   : ilog_base(q, j + std::uint64_t(std::max(0, L.twist())) + 1) + lvl + q;
    unsigned Dx = wanted;
    std::size_t N;
    if (lvl == 0) {
        // f = z^j is a polynomial: its Newton expansion terminates, so any
        // depth is exact once all j+1 coefficients are present
        N = std::size_t(j) + 1;
    } else {
        while (Dx > 0 && detail::pow_sat(q, Dx + 1) > n_cap) --Dx;
        if (detail::pow_sat(q, Dx + 1) > n_cap)
            throw std::invalid_argument("partial_via_measure: n_cap too small for any stratum");
        N = std::size_t(detail::pow_sat(q, Dx + 1));
    }

    long long h = L.degree_slope(), c0 = L.degree_offset();
    int prec = int((long long)j * Dx + h * Dx + c0 + q + 8);

    std::vector<LaurentSeries> vals;
    vals.reserve(N);
    for (std::uint64_t m = 0; m < N; ++m) {
        LaurentSeries pt = B.point(m);
        bool match = true;
        for (unsigned i = 0; i < lvl && match; ++i)
            match = pt.coeff(int(i)) == cond.infinite_residue().coeff(int(i));
        vals.push_back(match ? pt.pow((long long)j).truncated(prec)
                             : LaurentSeries::zero_mod(F, prec));
    }
    std::vector<LaurentSeries> fn = newton_coefficients(B, vals, prec);

    bool clean = true;
    std::vector<FqPoly> coeffs;
    coeffs.reserve(Dx + 1);
    for (unsigned d = 0; d <= Dx; ++d) {
        if (stratum_size(F, d) > (std::uint64_t(1) << 22))
            throw std::invalid_argument("partial_via_measure: stratum too large");
        LaurentSeries cd = LaurentSeries::zero(F);
        for_each_monic(F, d, [&](const FqPoly& a) {
            LaurentSeries one_unit = LaurentSeries::from_poly(a).shifted(int(d));
            auto pv = B.newton_values(one_unit, N, prec);
            LaurentSeries interp = LaurentSeries::zero(F);
            for (std::size_t n = 0; n < N; ++n) {
                if (fn[n].known_zero() && fn[n].is_exact()) continue;
                interp = interp + fn[n] * pv[n].shifted(-int(B.weight(n)));
            }
            cd = cd + LaurentSeries::from_poly(L.coefficient(a)) * interp;
        });
        cd = cd.shifted(-int((long long)j * d));
        if (!cd.is_exact() && cd.precision() <= 0) {
            clean = false;
            coeffs.push_back(FqPoly::zero(F));
            continue;
        }
        try {
            coeffs.push_back(cd.to_poly_in_T());
        } catch (const std::exception&) {
            clean = false;
            coeffs.push_back(FqPoly::zero(F));
        }
    }

    unsigned run = 0;
    for (std::size_t i = coeffs.size(); i-- > 0 && coeffs[i].is_zero();) ++run;
    MeasureRouteResult out;
    out.poly.j = j;
    out.poly.coeffs = std::move(coeffs);
    out.poly.d_max = Dx;
    out.poly.stabilized = run >= std::min<unsigned>(q, Dx + 1);
    out.exact_depth = Dx;
    out.requested_depth = wanted;
    out.n_used = N;
    out.certified = clean && Dx >= wanted;
    return out;
}

// Dirichlet coefficients from local Euler factors 1/den(u_P), den given by its
// coefficient list in the placeholder u_P with constant term 1.
using EulerFactorFn = std::function<std::vector<FqPoly>(const FqPoly&)>;

inline EulerFactorFn euler_zeta_factors(const FqField& F) {
    return [&F](const FqPoly&) {
        return std::vector<FqPoly>{FqPoly::one(F), -FqPoly::one(F)};
    };
}
inline EulerFactorFn euler_carlitz_factors(const FqField& F) {
    return [&F](const FqPoly& P) { return std::vector<FqPoly>{FqPoly::one(F), -P}; };
}

inline std::map<FqPoly, FqPoly> euler_expand(const FqField& F, unsigned D,
                                             const EulerFactorFn& den) {
    std::map<FqPoly, std::vector<FqPoly>> series;  // P -> expansion of 1/den
    auto coeff_at = [&](const FqPoly& P, unsigned e) -> const FqPoly& {
        auto& c = series[P];
        if (c.size() <= e) {
            std::vector<FqPoly> dn = den(P);
            if (dn.empty() || !(dn[0] == FqPoly::one(F)))
                throw std::invalid_argument("euler_expand: local factor constant term must be 1");
            if (c.empty()) c.push_back(FqPoly::one(F));
            while (c.size() <= e) {
                FqPoly next = FqPoly::zero(F);
                std::size_t k = c.size();
                for (std::size_t i = 1; i < dn.size() && i <= k; ++i)
                    next = next - dn[i] * c[k - i];
                c.push_back(std::move(next));
            }
        }
        return c[e];
    };

    std::map<FqPoly, FqPoly> out;
    for (unsigned d = 0; d <= D; ++d)
        for_each_monic(F, d, [&](const FqPoly& a) {
            FqPoly b = FqPoly::one(F);
            for (const auto& pe : factor(a).factors) b = b * coeff_at(pe.first, pe.second);
            out.emplace(a, std::move(b));
        });
    return out;
}

struct GrowthRow {
    std::uint64_t j;
    int degree;
    long long bound;
    bool pass;
};

// Degree of the (partial) special polynomial against c1 * log_q(j+1) + c2 for
// j = 1..j_max.  With the default constants the bound is the exact integer
// floor(log_q(j+1)).
inline std::vector<GrowthRow> degree_growth_report(
    const DirichletSeries& L, const CongruenceCondition& cond, std::uint64_t j_max,
    double c1 = 1.0, double c2 = 0.0, const SpecialScan& opt = SpecialScan()) {
    const FqField& F = L.field();
    unsigned q = F.q();
    detail::PowerSumKernel K(F);
    std::vector<GrowthRow> rows;
    rows.reserve(std::size_t(j_max));
    for (std::uint64_t j = 1; j <= j_max; ++j) {
        SpecialPoly z = detail::special_scan(L, j, cond, opt, &K);
        long long bound;
        if (c1 == 1.0 && c2 == 0.0)
            bound = (long long)ilog_base(q, j + 1);
        else
            bound = (long long)std::floor(
                c1 * (std::log(double(j) + 1.0) / std::log(double(q))) + c2 + 1e-9);
        rows.push_back({j, z.degree(), bound, z.degree() <= bound});
    }
    return rows;
}

}  // namespace fqzeta

#pragma once

// Measures on R = F_q[[u]] as truncated coefficient sequences b_n = integral of
// a basis polynomial, in either the Newton basis {Q_n} or the digit basis {G_n}.
// Convolution and the module action live in the digit basis, where G_n obeys the
// binomial theorem G_n(x+y) = sum_i C(n,i) G_i(x) G_{n-i}(y) (a consequence of
// the additivity of the q-power layers e_t = Q_{q^t} and Lucas' theorem).

#include "newton_basis.hpp"

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fqzeta {

enum class BasisTag { newton, digit };

// Values B_0(x), ..., B_{count-1}(x) with B = Q (newton) or B = G (digit).
// Q_n(x) = p_n(x) / u^{w(n)}; G_n(x) multiplies the digit powers of Q_{q^t}(x).
inline std::vector<LaurentSeries> basis_values(const NewtonBasis& B, BasisTag tag,
                                               const LaurentSeries& x, std::size_t count) {
    std::vector<LaurentSeries> pv = B.newton_values(x, count);
    std::vector<LaurentSeries> out;
    out.reserve(count);
    if (tag == BasisTag::newton) {
        for (std::size_t n = 0; n < count; ++n)
            out.push_back(pv[n].shifted(-int(B.weight(n))));
        return out;
    }
    const FqField& F = B.field();
    unsigned q = B.q();
    std::vector<LaurentSeries> layer;  // e_t(x) = Q_{q^t}(x) for q^t < count
    for (std::uint64_t pw = 1; pw < count; pw *= q)
        layer.push_back(pv[std::size_t(pw)].shifted(-int(B.weight(pw))));
    for (std::uint64_t n = 0; n < count; ++n) {
        LaurentSeries g = LaurentSeries::one(F);
        std::uint64_t m = n;
        for (std::size_t t = 0; m > 0; ++t, m /= q)
            for (unsigned r = 0; r < m % q; ++r) g = g * layer[t];
        out.push_back(std::move(g));
    }
    return out;
}

class Measure {
public:
    static constexpr int unbounded_floor = std::numeric_limits<int>::max();

    Measure(const FqField& F, BasisTag tag, std::vector<LaurentSeries> coeffs)
        : F_(F), tag_(tag), b_(std::move(coeffs)) {
        if (b_.empty()) throw std::invalid_argument("Measure: needs at least one coefficient");
        floor_ = unbounded_floor;
        for (const LaurentSeries& c : b_) {
            if (c.is_exact_zero()) continue;
            // an inexact zero is only known to vanish below its precision
            int v = c.known_zero() ? c.precision() : c.val();
            floor_ = std::min(floor_, v);
        }
    }

    const FqField& field() const { return F_; }
    BasisTag tag() const { return tag_; }
    std::size_t n_max() const { return b_.size() - 1; }
    const std::vector<LaurentSeries>& coeffs() const { return b_; }
    const LaurentSeries& coeff(std::size_t n) const {
        if (n >= b_.size()) throw std::domain_error("Measure: coefficient beyond truncation");
        return b_[n];
    }

    // Lower bound for v(b_n) over stored coefficients; exact whenever they are
    // visible or exactly zero.  unbounded_floor means the zero measure.
    int valuation_floor() const { return floor_; }

private:
    FqField F_;
    BasisTag tag_;
    std::vector<LaurentSeries> b_;
    int floor_;
};

// Dirac measure at alpha: b_n = Q_n(alpha) resp. G_n(alpha).  Evaluating the
// top basis polynomial divides by u^{w(n_max)}, so an inexact point must carry
// at least w(n_max) + 1 known digits.
inline Measure dirac(const NewtonBasis& B, BasisTag tag, const LaurentSeries& alpha,
                     std::size_t n_max) {
    if (!alpha.is_exact() &&
        (long long)alpha.precision() < B.weight(n_max) + 1)
        throw std::invalid_argument("dirac: point precision too low for requested truncation");
    return Measure(B.field(), tag, basis_values(B, tag, alpha, n_max + 1));
}

// The divided-derivative measure D^i/i!: digit coefficients b_j = [j == i].
inline Measure divided_derivative(const FqField& F, std::size_t i, std::size_t n_max) {
    if (i > n_max) throw std::invalid_argument("divided_derivative: order beyond truncation");
    std::vector<LaurentSeries> b;
    b.reserve(n_max + 1);
    for (std::size_t j = 0; j <= n_max; ++j)
        b.push_back(j == i ? LaurentSeries::one(F) : LaurentSeries::zero(F));
    return Measure(F, BasisTag::digit, std::move(b));
}

namespace detail {

// Expand an exact polynomial over the scaled Newton family u^{-w(k)} p_k or the
// digit family: both have leading coefficient u^{-w(k)}, so peeling the top
// term is an exact division by a monomial.
inline std::vector<LaurentSeries> expand_in(NewtonBasis& B, TateSeries f, BasisTag tag) {
    if (!f.is_exact())
        throw std::invalid_argument("expansion requires an exact polynomial");
    int d = f.degree();
    if (d < 0) return {};
    std::vector<LaurentSeries> rev;
    rev.reserve(std::size_t(d) + 1);
    for (int k = d; k >= 0; --k) {
        LaurentSeries a = f.coeff(k).shifted(int(B.weight(std::uint64_t(k))));
        if (!a.known_zero()) {
            TateSeries bk = (tag == BasisTag::newton) ? B.qn_poly(std::size_t(k))
                                                      : B.digit_poly(std::uint64_t(k));
            f = f - bk.scale(a);
        }
        rev.push_back(std::move(a));
    }
    return {rev.rbegin(), rev.rend()};
}

// Rows 0..n_max of the unitriangular matrix writing G_n in the Q-basis.
inline std::vector<std::vector<LaurentSeries>> digit_in_newton_rows(NewtonBasis& B,
                                                                    std::size_t n_max) {
    std::vector<std::vector<LaurentSeries>> rows;
    rows.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n)
        rows.push_back(expand_in(B, B.digit_poly(n), BasisTag::newton));
    return rows;
}

}  // namespace detail

inline std::vector<LaurentSeries> newton_expand(NewtonBasis& B, const TateSeries& f) {
    return detail::expand_in(B, f, BasisTag::newton);
}
inline std::vector<LaurentSeries> digit_expand(NewtonBasis& B, const TateSeries& f) {
    return detail::expand_in(B, f, BasisTag::digit);
}

// Change of basis tag.  With M the matrix of digit_in_newton_rows, measure
// coefficients push forward as b^G = M b^Q; the reverse direction solves the
// unitriangular system.
inline Measure convert(NewtonBasis& B, const Measure& mu, BasisTag to) {
    if (mu.tag() == to) return mu;
    const FqField& F = mu.field();
    std::size_t N = mu.n_max();
    auto rows = detail::digit_in_newton_rows(B, N);
    std::vector<LaurentSeries> out;
    out.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        LaurentSeries s = LaurentSeries::zero(F);
        if (to == BasisTag::digit) {
            for (std::size_t m = 0; m < rows[n].size(); ++m) s = s + rows[n][m] * mu.coeff(m);
        } else {
            s = mu.coeff(n);
            for (std::size_t m = 0; m + 1 < rows[n].size(); ++m) s = s - rows[n][m] * out[m];
        }
        out.push_back(std::move(s));
    }
    return Measure(F, to, std::move(out));
}

struct IntegrationResult {
    LaurentSeries value;    // sum a_n b_n over the provided coefficients
    long long tail_floor;   // valuation lower bound for the dropped tail; tail_exact if none
    static constexpr long long tail_exact = std::numeric_limits<long long>::max();
};

// Pair an expansion with a measure.  tail_coeff_floor bounds v(a_n) for the
// indices beyond the provided ones (tail_exact for a finite expansion); the
// tail valuation bound adds the measure's boundedness certificate.
inline IntegrationResult integrate(BasisTag tag, const std::vector<LaurentSeries>& a,
                                   const Measure& mu,
                                   long long tail_coeff_floor = IntegrationResult::tail_exact) {
    if (tag != mu.tag()) throw std::invalid_argument("integrate: basis tag mismatch");
    if (a.size() > mu.n_max() + 1)
        throw std::invalid_argument("integrate: expansion longer than measure truncation");
    LaurentSeries s = LaurentSeries::zero(mu.field());
    for (std::size_t n = 0; n < a.size(); ++n) s = s + a[n] * mu.coeff(n);
    long long tf = IntegrationResult::tail_exact;
    if (tail_coeff_floor != IntegrationResult::tail_exact &&
        mu.valuation_floor() != Measure::unbounded_floor)
        tf = tail_coeff_floor + mu.valuation_floor();
    return {std::move(s), tf};
}

// Value of an expansion at a point of R (same sum as integrating a Dirac).
inline LaurentSeries expansion_value(const NewtonBasis& B, BasisTag tag,
                                     const std::vector<LaurentSeries>& a,
                                     const LaurentSeries& alpha) {
    if (a.empty()) return LaurentSeries::zero(B.field());
    std::vector<LaurentSeries> bv = basis_values(B, tag, alpha, a.size());
    LaurentSeries s = LaurentSeries::zero(B.field());
    for (std::size_t n = 0; n < a.size(); ++n) s = s + a[n] * bv[n];
    return s;
}

// Convolution, c_n = sum_i C(n,i) a_i b_{n-i} in the digit basis.  Newton-tag
// inputs are converted first; truncations shrink to the shorter operand.
inline Measure convolve(NewtonBasis& B, const Measure& mu, const Measure& nu) {
    const Measure& m = (mu.tag() == BasisTag::digit) ? mu : convert(B, mu, BasisTag::digit);
    const Measure& n = (nu.tag() == BasisTag::digit) ? nu : convert(B, nu, BasisTag::digit);
    const FqField& F = m.field();
    unsigned p = F.p();
    std::size_t N = std::min(m.n_max(), n.n_max());
    std::vector<LaurentSeries> c;
    c.reserve(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        LaurentSeries s = LaurentSeries::zero(F);
        for (std::size_t i = 0; i <= k; ++i) {
            unsigned bc = binom_mod_p(p, k, i);
            if (bc == 0) continue;
            LaurentSeries t = m.coeff(i) * n.coeff(k - i);
            s = s + (bc == 1 ? t : t.scale(F.from_int((long long)bc)));
        }
        c.push_back(std::move(s));
    }
    return Measure(F, BasisTag::digit, std::move(c));
}

// Module action (mu * f)(x) = integral of f(x+y) dmu(y) on digit expansions:
// c_m = sum_k C(k,m) a_k b_{k-m}.
inline std::vector<LaurentSeries> act(NewtonBasis& B, const Measure& mu,
                                      const std::vector<LaurentSeries>& a) {
    const Measure& m = (mu.tag() == BasisTag::digit) ? mu : convert(B, mu, BasisTag::digit);
    if (a.size() > m.n_max() + 1)
        throw std::invalid_argument("act: expansion longer than measure truncation");
    const FqField& F = m.field();
    unsigned p = F.p();
    std::vector<LaurentSeries> c;
    c.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        LaurentSeries s = LaurentSeries::zero(F);
        for (std::size_t k = i; k < a.size(); ++k) {
            unsigned bc = binom_mod_p(p, k, i);
            if (bc == 0) continue;
            LaurentSeries t = a[k] * m.coeff(k - i);
            s = s + (bc == 1 ? t : t.scale(F.from_int((long long)bc)));
        }
        c.push_back(std::move(s));
    }
    return c;
}

// Transform of a digit expansion: the power series whose z^n coefficient is a_n.
// It turns convolution into multiplication and D^i/i! into the hyperderivative.
inline TateSeries transform_series(const FqField& F, std::vector<LaurentSeries> a) {
    return TateSeries(F, std::move(a));
}
inline LaurentSeries transform_value(const FqField& F, const std::vector<LaurentSeries>& a,
                                     const LaurentSeries& z) {
    return TateSeries(F, a).eval(z);
}

}  // namespace fqzeta

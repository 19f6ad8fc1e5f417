#pragma once

// Interpolation bases for continuous functions on R = F_q[[u]]:
//  - the well-distributed point sequence u_n from base-q digits of n,
//  - Newton polynomials p_n(z) = prod_{i<n} (z - u_i) and their normalized
//    companions Q_n = p_n / u^{w(n)}, w(n) = sum_{i>=1} [n/q^i],
//  - the digit product basis G_n built from e_i = Q_{q^i},
//  - the triangular interpolation solve and the order-h growth classifier.
//
// Polynomial caches grow on demand; build them before sharing across threads.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fq.hpp"
#include "laurent.hpp"
#include "tate.hpp"

namespace fqzeta {

class NewtonBasis {
public:
    explicit NewtonBasis(const FqField& F) : F_(F) {
        p_.push_back(TateSeries::one(F_));  // p_0 = 1 (empty product)
    }

    const FqField& field() const { return F_; }
    unsigned q() const { return unsigned(F_.q()); }

    // u_n = sum psi(n_i) u^i over the base-q digits of n, psi the canonical
    // digit bijection; the first q^h points represent every coset mod u^h
    LaurentSeries point(std::uint64_t n) const {
        std::vector<felem> w;
        std::uint64_t q = F_.q();
        while (n) {
            w.push_back(felem(n % q));
            n /= q;
        }
        return LaurentSeries(F_, 0, std::move(w));
    }

    static long long weight(unsigned q, std::uint64_t n) {
        long long s = 0;
        for (std::uint64_t d = n / q; d; d /= q) s += (long long)d;
        return s;
    }
    static long long weight_partial(unsigned q, std::uint64_t n, unsigned h) {
        long long s = 0;
        std::uint64_t d = n;
        for (unsigned i = 1; i <= h && d; ++i) {
            d /= q;
            s += (long long)d;
        }
        return s;
    }
    long long weight(std::uint64_t n) const { return weight(q(), n); }
    long long weight_partial(std::uint64_t n, unsigned h) const {
        return weight_partial(q(), n, h);
    }

    const TateSeries& newton_poly(std::size_t n) {
        while (p_.size() <= n) {
            std::size_t k = p_.size() - 1;
            TateSeries lin(F_, {-point(k), LaurentSeries::one(F_)});
            p_.push_back(p_.back() * lin);
        }
        return p_[n];
    }

    TateSeries qn_poly(std::size_t n) {
        const TateSeries& p = newton_poly(n);
        LaurentSeries s = LaurentSeries::monomial(F_, -int(weight(n)));
        return p.scale(s);
    }

    // G_n = prod e_i^{n_i} with e_i = Q_{q^i} and n_i the base-q digits
    TateSeries digit_poly(std::uint64_t n) {
        TateSeries g = TateSeries::one(F_);
        std::uint64_t qq = F_.q();
        std::uint64_t pw = 1;
        while (n) {
            unsigned digit = unsigned(n % qq);
            if (digit) {
                TateSeries e = qn_poly(std::size_t(pw));
                for (unsigned t = 0; t < digit; ++t) g = g * e;
            }
            n /= qq;
            pw *= qq;
        }
        return g;
    }

    // p_k(x) for k = 0..count-1 as one incremental product sweep
    std::vector<LaurentSeries> newton_values(const LaurentSeries& x, std::size_t count) const {
        std::vector<LaurentSeries> out;
        out.reserve(count);
        LaurentSeries acc = LaurentSeries::one(F_);
        for (std::size_t k = 0; k < count; ++k) {
            out.push_back(acc);
            if (k + 1 < count) acc = acc * (x - point(k));
        }
        return out;
    }

    // Same sweep, but each p_k(x) is only needed modulo u^{prec + w(k)} (its
    // consumers divide by u^{w(k)}).  Capping the running product keeps the
    // window width near prec instead of growing with k, which matters at the
    // depths the measure route uses.
    std::vector<LaurentSeries> newton_values(const LaurentSeries& x, std::size_t count,
                                             int prec) const {
        std::vector<LaurentSeries> out;
        out.reserve(count);
        LaurentSeries acc = LaurentSeries::one(F_);
        for (std::size_t k = 0; k < count; ++k) {
            out.push_back(acc.truncated(prec + int(weight(k))));
            if (k + 1 < count)
                acc = (acc * (x - point(k))).truncated(prec + int(weight(count - 1)));
        }
        return out;
    }

private:
    FqField F_;
    std::vector<TateSeries> p_;
};

// Triangular solve for f = sum a_n Q_n from values f(u_0)..f(u_M), working
// modulo u^prec throughout. Division happens only by the units Q_k(u_k),
// so coefficient precision tracks input precision.
inline std::vector<LaurentSeries> newton_coefficients(const NewtonBasis& basis,
                                                      const std::vector<LaurentSeries>& values,
                                                      int prec) {
    const FqField& F = basis.field();
    std::size_t M = values.size();
    std::vector<LaurentSeries> r;
    r.reserve(M);
    for (const auto& v : values) r.push_back(v.truncated(prec));

    std::vector<LaurentSeries> pv(M, LaurentSeries::one(F));  // p_k(u_m)
    std::vector<LaurentSeries> a;
    a.reserve(M);
    for (std::size_t k = 0; k < M; ++k) {
        if (r[k].precision() <= 0)
            throw std::runtime_error("newton_coefficients: precision exhausted at index " +
                                     std::to_string(k));
        LaurentSeries Qkk = pv[k].shifted(-int(basis.weight(k)));  // unit
        int vb = r[k].val_bound();
        int rel = prec - std::min(0, vb) + 1;
        LaurentSeries ak = r[k] * Qkk.inverse(rel);
        a.push_back(ak.truncated(prec));
        for (std::size_t m = k + 1; m < M; ++m) {
            // r[m] lives modulo u^prec and pv[m] is only ever divided by
            // u^{w(k)} with k <= m, so both products can be precision-capped
            int avb = std::min(0, a.back().val_bound());
            LaurentSeries Qkm = pv[m].shifted(-int(basis.weight(k))).truncated(prec - avb);
            r[m] = r[m] - a.back() * Qkm;
            pv[m] = (pv[m] * (basis.point(m) - basis.point(k)))
                        .truncated(prec + int(basis.weight(m)));
        }
    }
    return a;
}

// values sum_k a_k Q_k(u_m) for m = 0..M-1
inline std::vector<LaurentSeries> newton_reconstruct(const NewtonBasis& basis,
                                                     const std::vector<LaurentSeries>& coeffs,
                                                     std::size_t M) {
    const FqField& F = basis.field();
    std::vector<LaurentSeries> out(M, LaurentSeries::zero(F));
    for (std::size_t m = 0; m < M; ++m) {
        auto pv = basis.newton_values(basis.point(m), coeffs.size());
        LaurentSeries acc = LaurentSeries::zero(F);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            acc = acc + coeffs[k] * pv[k].shifted(-int(basis.weight(k)));
        out[m] = acc;
    }
    return out;
}

struct OrderCheckReport {
    unsigned h = 0;
    long long min_deficiency = 0;
    std::uint64_t n_at_min = 0;
    double first_quartile_mean = 0.0;
    double last_quartile_mean = 0.0;
    double trend_slope = 0.0;
    std::string verdict;
};

// deficiency d_n = v(a_n) - (w(n) - w_h(n)); order h demands d_n -> infinity,
// judged on the finite sample by quartile separation
inline OrderCheckReport amice_order_check(unsigned q,
                                          std::vector<std::pair<std::uint64_t, long long>> vals,
                                          unsigned h) {
    if (vals.empty()) throw std::invalid_argument("amice_order_check: empty sample");
    std::sort(vals.begin(), vals.end());
    std::vector<std::pair<std::uint64_t, long long>> d;
    d.reserve(vals.size());
    for (auto& [n, v] : vals)
        d.emplace_back(n, v - (NewtonBasis::weight(q, n) - NewtonBasis::weight_partial(q, n, h)));

    OrderCheckReport rep;
    rep.h = h;
    rep.min_deficiency = d[0].second;
    rep.n_at_min = d[0].first;
    long long max_all = d[0].second;
    for (auto& [n, x] : d) {
        if (x < rep.min_deficiency) {
            rep.min_deficiency = x;
            rep.n_at_min = n;
        }
        max_all = std::max(max_all, x);
    }

    std::size_t quarter = std::max<std::size_t>(1, d.size() / 4);
    auto stats = [&](std::size_t lo, std::size_t hi) {
        double sum = 0, nsum = 0;
        long long mn = d[lo].second, mx = d[lo].second;
        for (std::size_t i = lo; i < hi; ++i) {
            sum += double(d[i].second);
            nsum += double(d[i].first);
            mn = std::min(mn, d[i].second);
            mx = std::max(mx, d[i].second);
        }
        double cnt = double(hi - lo);
        return std::tuple<double, double, long long, long long>(sum / cnt, nsum / cnt, mn, mx);
    };
    auto [mf, nf, min_first, max_first] = stats(0, quarter);
    auto [ml, nl, min_last, max_last] = stats(d.size() - quarter, d.size());
    rep.first_quartile_mean = mf;
    rep.last_quartile_mean = ml;
    rep.trend_slope = (nl > nf) ? (ml - mf) / (nl - nf) : 0.0;

    if (max_all - rep.min_deficiency <= 2)
        rep.verdict = "boundary: bounded, not divergent";
    else if (min_last > max_first || (ml - mf >= 3 && double(min_last) >= mf))
        rep.verdict = "consistent with order " + std::to_string(h);
    else if (max_last < min_first || mf - ml >= 3)
        rep.verdict = "inconsistent with order " + std::to_string(h);
    else
        rep.verdict = "indeterminate";
    return rep;
}

// l = max{0, 1 + [-log_q(gamma (q-1))]} for gamma = num/den > 0
inline int order_from_gamma(unsigned q, long long num, long long den) {
    if (num <= 0 || den <= 0)
        throw std::domain_error("order_from_gamma: not locally analytic (gamma <= 0)");
    // largest m (possibly negative) with num (q-1) q^m <= den, exactly
    unsigned long long lhs = (unsigned long long)num * (q - 1);
    unsigned long long rhs = (unsigned long long)den;
    int m = 0;
    if (lhs <= rhs) {
        unsigned long long cur = lhs;
        while (cur <= rhs / q) {
            cur *= q;
            ++m;
        }
    } else {
        unsigned long long cur = rhs;
        while (cur < lhs) {
            cur *= q;
            --m;
        }
    }
    return std::max(0, 1 + m);
}

}  // namespace fqzeta

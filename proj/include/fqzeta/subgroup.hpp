#pragma once

// Finite additive subgroups W of F_q[T] (F_p-spans of a generator list),
// their power sums s_i(W) = sum_{w in W} w^i, the subgroup polynomial
// e_W(z) = prod_{w in W} (z - w), and the expansion of lambda_W / e_W(z)
// in descending powers of z, whose z^{-j} coefficient is s_{j-1}(W).

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fqpoly.hpp"

namespace fqzeta {

class AdditiveSubgroup {
public:
    AdditiveSubgroup(const FqField& F, const std::vector<FqPoly>& generators) : F_(F) {
        std::size_t width = 0;
        for (const FqPoly& g : generators) {
            if (g.field() != F) throw std::domain_error("AdditiveSubgroup: mixed fields");
            width = std::max(width, std::size_t(g.degree() + 1) * F_.e());
        }
        // Gaussian elimination over F_p on flattened base-p digit vectors,
        // one stored row per pivot position
        std::vector<std::vector<felem>> by_pivot(width);
        for (const FqPoly& g : generators) {
            std::vector<felem> row = flatten(g, width);
            for (std::size_t piv = pivot(row); piv < width; piv = pivot(row)) {
                if (by_pivot[piv].empty()) {
                    by_pivot[piv] = row;
                    break;
                }
                const auto& b = by_pivot[piv];
                unsigned f = row[piv] * inv_mod_p(b[piv]) % F_.p();
                for (std::size_t k = piv; k < width; ++k)
                    row[k] = felem((row[k] + (F_.p() - f) * b[k]) % F_.p());
            }
        }
        for (const auto& r : by_pivot)
            if (!r.empty()) basis_.push_back(unflatten(r));
    }

    const FqField& field() const { return F_; }
    std::size_t dim() const { return basis_.size(); }  // F_p-dimension
    std::uint64_t size() const {
        std::uint64_t n = 1;
        for (std::size_t i = 0; i < basis_.size(); ++i) n *= F_.p();
        return n;
    }
    const std::vector<FqPoly>& basis() const { return basis_; }

    std::vector<FqPoly> elements() const {
        std::vector<FqPoly> out;
        out.reserve(size());
        FqPoly acc = FqPoly::zero(F_);
        enumerate(0, acc, out);
        return out;
    }

    bool operator==(const AdditiveSubgroup& o) const {
        if (F_ != o.F_ || basis_.size() != o.basis_.size()) return false;
        auto a = elements(), b = o.elements();
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    }

private:
    void enumerate(std::size_t i, FqPoly& acc, std::vector<FqPoly>& out) const {
        if (i == basis_.size()) {
            out.push_back(acc);
            return;
        }
        FqPoly save = acc;
        for (unsigned c = 0; c < F_.p(); ++c) {
            enumerate(i + 1, acc, out);
            acc = acc + basis_[i];
        }
        acc = save;
    }
    std::vector<felem> flatten(const FqPoly& g, std::size_t width) const {
        std::vector<felem> row;
        for (felem c : g.coeffs())
            for (unsigned i = 0; i < F_.e(); ++i) { row.push_back(felem(c % F_.p())); c = felem(c / F_.p()); }
        row.resize(width, 0);
        return row;
    }
    FqPoly unflatten(const std::vector<felem>& row) const {
        std::vector<felem> c;
        for (std::size_t i = 0; i < row.size(); i += F_.e()) {
            felem v = 0, pw = 1;
            for (unsigned k = 0; k < F_.e() && i + k < row.size(); ++k) {
                v = felem(v + row[i + k] * pw);
                pw = felem(pw * F_.p());
            }
            c.push_back(v);
        }
        return FqPoly(F_, c);
    }
    static std::size_t pivot(const std::vector<felem>& row) {
        for (std::size_t k = 0; k < row.size(); ++k)
            if (row[k]) return k;
        return row.size();
    }
    unsigned inv_mod_p(unsigned a) const {
        for (unsigned b = 1; b < F_.p(); ++b)
            if (a * b % F_.p() == 1) return b;
        throw std::logic_error("inv_mod_p");
    }

    FqField F_;
    std::vector<FqPoly> basis_;
};

// sum of w^i over W, with 0^0 = 1
inline FqPoly power_sum_subgroup(const AdditiveSubgroup& W, unsigned long long i) {
    const FqField& F = W.field();
    FqPoly s = FqPoly::zero(F);
    for (const FqPoly& w : W.elements()) {
        if (w.is_zero()) {
            if (i == 0) s = s + FqPoly::one(F);
        } else {
            s = s + w.pow(i);
        }
    }
    return s;
}

// coefficients of e_W(z) = prod_{w in W} (z - w), ascending in z
inline std::vector<FqPoly> subgroup_poly(const AdditiveSubgroup& W) {
    const FqField& F = W.field();
    std::vector<FqPoly> e{FqPoly::one(F)};
    for (const FqPoly& w : W.elements()) {
        std::vector<FqPoly> nxt(e.size() + 1, FqPoly::zero(F));
        for (std::size_t k = 0; k < e.size(); ++k) {
            nxt[k + 1] = nxt[k + 1] + e[k];
            nxt[k] = nxt[k] - e[k] * w;
        }
        e = std::move(nxt);
    }
    return e;
}

// e_W has a constant z-derivative; this is lambda_W
inline FqPoly subgroup_lambda(const std::vector<FqPoly>& eW) {
    return eW.size() > 1 ? eW[1] : FqPoly::zero(eW[0].field());
}

struct LogDerivativeReport {
    bool ok;
    // per j in [1, j_max]: (coefficient of z^{-j} in lambda/e_W, s_{j-1}(W))
    std::vector<std::pair<FqPoly, FqPoly>> compared;
};

// expand lambda_W / e_W(z) in descending powers of z and compare the z^{-j}
// coefficient against the directly computed power sum s_{j-1}(W)
inline LogDerivativeReport verify_log_derivative_identity(const AdditiveSubgroup& W,
                                                          unsigned j_max) {
    const FqField& F = W.field();
    std::vector<FqPoly> e = subgroup_poly(W);
    FqPoly lam = subgroup_lambda(e);
    const std::size_t N = e.size() - 1;  // |W|, e is monic of degree N in z
    // lambda / e = lambda * z^{-N} / (1 + g(z^{-1})), g(w) = sum_{k<N} e_k w^{N-k}
    std::vector<FqPoly> g(j_max + 1, FqPoly::zero(F));
    for (std::size_t k = 0; k < N; ++k) {
        std::size_t exp = N - k;
        if (exp <= j_max && !e[k].is_zero()) g[exp] = e[k];
    }
    std::vector<FqPoly> h(j_max + 1, FqPoly::zero(F));  // 1/(1+g) as series in w
    h[0] = FqPoly::one(F);
    for (std::size_t n = 1; n <= j_max; ++n) {
        FqPoly acc = FqPoly::zero(F);
        for (std::size_t k = 1; k <= n; ++k)
            if (!g[k].is_zero()) acc = acc + g[k] * h[n - k];
        h[n] = -acc;
    }
    LogDerivativeReport rep{true, {}};
    for (unsigned j = 1; j <= j_max; ++j) {
        FqPoly lhs = FqPoly::zero(F);
        if (j >= N) lhs = lam * h[j - N];  // coefficient of z^{-j}
        FqPoly rhs = power_sum_subgroup(W, j - 1);
        if (lhs != rhs) rep.ok = false;
        rep.compared.emplace_back(lhs, rhs);
    }
    return rep;
}

}  // namespace fqzeta

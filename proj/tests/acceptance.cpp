// Acceptance gate: every release-blocking claim checked end to end, one
// PASS/FAIL line per criterion.  All comparisons are exact (zero tolerance
// on stored coefficients); series agreement happens at depths pinned below,
// always strictly inside the certified precision of both sides.  Exit code
// is the number of failed criteria.

#include <fqzeta/fqzeta.hpp>

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace {

using namespace fqzeta;

int failures = 0;

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

void report(int n, const char* what, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", n, what, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
// Power sums over every additive subgroup reachable from generators of
// degree <= 3 vanish below the subgroup order.  The generator space is
// F_p^4, so "every subgroup" means every F_p-subspace; the subspace counts
// (Gaussian binomial sums) pin completeness of the enumeration.

void criterion1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;
    for (unsigned q : {2u, 3u}) {
        FqField F(q);
        unsigned p = F.p();
        std::uint64_t space = q * q * q * q;
        auto decode = [&](std::uint64_t code) {
            std::vector<felem> c;
            for (int i = 0; i < 4; ++i) {
                c.push_back(felem(code % q));
                code /= q;
            }
            return FqPoly(F, c);
        };
        auto addmod = [&](std::uint16_t a, std::uint16_t b) {
            std::uint16_t out = 0, mul = 1;
            for (int i = 0; i < 4; ++i) {
                out = std::uint16_t(out + mul * ((a + b) % p));
                a = std::uint16_t(a / p);
                b = std::uint16_t(b / p);
                mul = std::uint16_t(mul * p);
            }
            return out;
        };
        // grow spans one generator at a time, deduplicating by element list
        std::set<std::vector<std::uint16_t>> seen;
        std::vector<std::vector<std::uint16_t>> frontier{{0}}, all{{0}};
        seen.insert({0});
        while (!frontier.empty()) {
            std::vector<std::vector<std::uint16_t>> next;
            for (const auto& S : frontier) {
                std::set<std::uint16_t> base(S.begin(), S.end());
                for (std::uint16_t v = 1; v < space; ++v) {
                    if (base.count(v)) continue;
                    std::set<std::uint16_t> grown(base);
                    for (std::uint16_t s : S) {
                        std::uint16_t w = s;
                        for (unsigned c = 1; c < p; ++c) {
                            w = addmod(w, v);
                            grown.insert(w);
                        }
                    }
                    std::vector<std::uint16_t> key(grown.begin(), grown.end());
                    if (seen.insert(key).second) {
                        next.push_back(key);
                        all.push_back(key);
                    }
                }
            }
            frontier = std::move(next);
        }
        std::size_t expect = q == 2 ? 67 : 212;  // sum of Gaussian binomials [4 choose d]_p
        if (all.size() != expect) ok = false;

        // running powers: one multiplication per element per exponent
        unsigned long long checks = 0, bad = 0, spot_bad = 0;
        std::mt19937_64 rng(12345);
        for (const auto& S : all) {
            std::vector<FqPoly> elems, pw;
            for (std::uint16_t code : S) elems.push_back(decode(code));
            for (std::size_t t = 0; t < elems.size(); ++t) pw.push_back(FqPoly::one(F));
            for (std::uint64_t i = 0; i + 1 < S.size(); ++i) {
                FqPoly s = FqPoly::zero(F);
                for (const auto& x : pw) s = s + x;
                ++checks;
                if (!s.is_zero()) ++bad;
                if (rng() % 97 == 0) {
                    // anchor the incremental sweep to the library routine
                    std::vector<FqPoly> gens(elems.begin() + 1, elems.end());
                    AdditiveSubgroup W(F, gens.empty() ? std::vector<FqPoly>{FqPoly::zero(F)}
                                                       : gens);
                    if (!(power_sum_subgroup(W, i) == s)) ++spot_bad;
                }
                for (std::size_t t = 0; t < pw.size(); ++t) pw[t] = pw[t] * elems[t];
            }
        }
        if (bad || spot_bad) ok = false;
        note += fmt("q=%u: %zu subgroups, %llu checks; ", q, all.size(), checks);
    }
    double el = secs(t0);
    ok = ok && el < 10.0;
    report(1, "power sums vanish below the subgroup order", ok,
           note + fmt("%.2fs (budget 10s)", el));
}

// ---------------------------------------------------------------- criterion 2
// Degree bound on the special polynomials z(x,-j).  The strata are recomputed
// here from scratch (coset recursion with no vanishing short-cuts), anchored
// to literal enumeration at small size and to the library kernel on a large
// overlap; the bound deg z <= floor(log_q(j+1)) is then exactly the verified
// vanishing of every stratum with j < q^d - 1.

using Bits = std::vector<std::uint64_t>;

void xor_shift(Bits& dst, const Bits& src, std::size_t sh) {
    std::size_t w = sh / 64, b = sh % 64;
    if (dst.size() < src.size() + w + 1) dst.resize(src.size() + w + 1, 0);
    if (b == 0) {
        for (std::size_t i = 0; i < src.size(); ++i) dst[i + w] ^= src[i];
    } else {
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[i + w] ^= src[i] << b;
            dst[i + w + 1] ^= src[i] >> (64 - b);
        }
    }
}

void trim_bits(Bits& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

FqPoly bits_to_poly(const FqField& F, const Bits& v) {
    std::vector<felem> c;
    c.reserve(v.size() * 64);
    for (std::uint64_t w : v)
        for (int i = 0; i < 64; ++i) c.push_back(felem((w >> i) & 1));
    return FqPoly(F, c);
}

// base-3 subsets: every i whose digits are dominated by those of k, with
// the Lucas value of C(k,i) mod 3
template <typename Fn>
void for_each_sub3(std::uint64_t k, Fn&& fn) {
    unsigned dig[8], nd = 0;
    std::uint64_t tmp = k;
    do {
        dig[nd++] = unsigned(tmp % 3);
        tmp /= 3;
    } while (tmp);
    unsigned cur[8] = {0};
    static const unsigned binom3[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    for (;;) {
        std::uint64_t i = 0;
        unsigned c = 1;
        for (unsigned t = nd; t-- > 0;) {
            i = i * 3 + cur[t];
            c = c * binom3[dig[t]][cur[t]] % 3;
        }
        fn(i, c);
        unsigned t = 0;
        while (t < nd && cur[t] == dig[t]) {
            cur[t] = 0;
            ++t;
        }
        if (t == nd) break;
        ++cur[t];
    }
}

void add_scaled_shift3(std::vector<unsigned char>& dst, const std::vector<unsigned char>& src,
                       unsigned mult, std::size_t sh) {
    if (dst.size() < src.size() + sh) dst.resize(src.size() + sh, 0);
    for (std::size_t t = 0; t < src.size(); ++t)
        dst[t + sh] = (unsigned char)((dst[t + sh] + mult * src[t]) % 3);
}

void trim3(std::vector<unsigned char>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

void criterion2() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;

    // pinned small values
    for (unsigned q : {2u, 3u, 5u}) {
        FqField F(q);
        SpecialPoly z0 = special_polynomial(DirichletSeries::zeta(F), 0);
        if (!(z0.stabilized && z0.degree() == 0 && z0.coeffs[0] == FqPoly::one(F))) ok = false;
    }
    {
        FqField F(2);
        SpecialPoly z1 = special_polynomial(DirichletSeries::zeta(F), 1);
        if (!(z1.degree() == 1 && z1.coeffs[0] == FqPoly::one(F) &&
              z1.coeffs[1] == FqPoly::one(F)))
            ok = false;
    }

    // q = 2, j <= 4095, strata d <= 12, bit-packed rows s_k(W_d)
    {
        const std::uint64_t JMAX = 4095;
        const unsigned DMAX = 12;
        FqField F(2);
        detail::PowerSumKernel K(F);
        std::vector<Bits> prev(JMAX + 1), cur(JMAX + 1);
        prev[0] = {1};
        unsigned long long row_bad = 0, cross_bad = 0, anchor_bad = 0;
        unsigned long long pairs = 0, nonzero = 0;
        for (unsigned d = 1; d <= DMAX; ++d) {
            std::uint64_t thresh = (std::uint64_t(1) << d) - 1;
            for (std::uint64_t k = 0; k <= JMAX; ++k) {
                Bits acc;
                for (std::uint64_t i = k; i > 0; i = (i - 1) & k) {
                    const Bits& low = prev[k ^ i];
                    if (!low.empty()) xor_shift(acc, low, std::size_t((d - 1) * i));
                }
                trim_bits(acc);
                if (k < thresh && !acc.empty()) ++row_bad;
                cur[k] = std::move(acc);
            }
            if (d <= 3) {
                // literal subgroup enumeration agrees with the recursion
                std::vector<FqPoly> gens;
                for (unsigned i = 0; i < d; ++i) gens.push_back(FqPoly::T(F).pow(i));
                AdditiveSubgroup W(F, gens);
                for (std::uint64_t k = 0; k <= 40; ++k)
                    if (!(power_sum_subgroup(W, k) == bits_to_poly(F, cur[k]))) ++anchor_bad;
            }
            for (std::uint64_t j = thresh; j <= JMAX; ++j) {
                Bits acc;
                for (std::uint64_t k = j;; k = (k - 1) & j) {
                    if (!cur[k].empty()) xor_shift(acc, cur[k], std::size_t(d * (j - k)));
                    if (k == 0) break;
                }
                trim_bits(acc);
                ++pairs;
                if (!acc.empty()) ++nonzero;
                if (j <= 255 && d <= 8) {
                    FqPoly lib = detail::kernel_stratum(K, d, j, CongruenceCondition());
                    if (!(lib == bits_to_poly(F, acc))) ++cross_bad;
                }
                if (d <= 3 && j <= 32) {
                    FqPoly lit = FqPoly::zero(F);
                    for_each_monic(F, d,
                                   [&](const FqPoly& a) { lit = lit + detail::frobenius_pow(a, j); });
                    if (!(lit == bits_to_poly(F, acc))) ++anchor_bad;
                }
            }
            prev.swap(cur);
        }
        if (row_bad || cross_bad || anchor_bad) ok = false;
        note += fmt("q=2: all strata d<=12 vanish for j < 2^d-1, %llu surviving pairs (%llu nonzero); ",
                    pairs, nonzero);
    }

    // q = 3, j <= 728, strata d <= 6
    {
        const std::uint64_t JMAX = 728;
        const unsigned DMAX = 6;
        FqField F(3);
        detail::PowerSumKernel K(F);
        std::vector<std::vector<unsigned char>> prev(JMAX + 1), cur(JMAX + 1);
        prev[0] = {1};
        unsigned long long row_bad = 0, cross_bad = 0, anchor_bad = 0;
        unsigned long long pairs = 0, nonzero = 0;
        std::uint64_t thresh = 1;
        auto to_poly = [&](const std::vector<unsigned char>& v) {
            return FqPoly(F, std::vector<felem>(v.begin(), v.end()));
        };
        for (unsigned d = 1; d <= DMAX; ++d) {
            thresh *= 3;
            for (std::uint64_t k = 0; k <= JMAX; ++k) {
                std::vector<unsigned char> acc;
                for_each_sub3(k, [&](std::uint64_t i, unsigned c) {
                    if (i == 0 || i % 2 || c == 0) return;
                    const auto& low = prev[k - i];
                    if (low.empty()) return;
                    add_scaled_shift3(acc, low, 3 - c, std::size_t((d - 1) * i));
                });
                trim3(acc);
                if (k < thresh - 1 && !acc.empty()) ++row_bad;
                cur[k] = std::move(acc);
            }
            if (d <= 2) {
                std::vector<FqPoly> gens;
                for (unsigned i = 0; i < d; ++i) gens.push_back(FqPoly::T(F).pow(i));
                AdditiveSubgroup W(F, gens);
                for (std::uint64_t k = 0; k <= 30; ++k)
                    if (!(power_sum_subgroup(W, k) == to_poly(cur[k]))) ++anchor_bad;
            }
            for (std::uint64_t j = thresh - 1; j <= JMAX; ++j) {
                std::vector<unsigned char> acc;
                for_each_sub3(j, [&](std::uint64_t k, unsigned c) {
                    if (c == 0) return;
                    const auto& sk = cur[k];
                    if (sk.empty()) return;
                    add_scaled_shift3(acc, sk, c, std::size_t(d * (j - k)));
                });
                trim3(acc);
                ++pairs;
                if (!acc.empty()) ++nonzero;
                if (j <= 242 && d <= 4) {
                    FqPoly lib = detail::kernel_stratum(K, d, j, CongruenceCondition());
                    if (!(lib == to_poly(acc))) ++cross_bad;
                }
                if (d <= 2 && j <= 30) {
                    FqPoly lit = FqPoly::zero(F);
                    for_each_monic(F, d,
                                   [&](const FqPoly& a) { lit = lit + detail::frobenius_pow(a, j); });
                    if (!(lit == to_poly(acc))) ++anchor_bad;
                }
            }
            prev.swap(cur);
        }
        if (row_bad || cross_bad || anchor_bad) ok = false;
        note += fmt("q=3: all strata d<=6 vanish for j < 3^d-1, %llu surviving pairs (%llu nonzero); ",
                    pairs, nonzero);
    }

    double el = secs(t0);
    ok = ok && el < 300.0;
    report(2, "special polynomial degree bound, exhaustive", ok,
           note + fmt("%.2fs (budget 300s)", el));
}

// ---------------------------------------------------------------- criterion 3
// Measure route equals direct summation, coefficient by coefficient, for
// both series, all infinite-place conditions of level 0..2 and j <= 16.
// Certification means the requested strata were fully interpolated and every
// coefficient rounded to A cleanly, i.e. the truncation tail sits strictly
// below each stored coefficient.

void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long runs = 0, uncert = 0, mismatch = 0;
    for (unsigned q : {2u, 3u}) {
        FqField F(q);
        NewtonBasis B(F);
        int depth = q == 2 ? 5 : 2;  // deepest request n_max = 64 interpolation points afford
        std::vector<CongruenceCondition> conds;
        conds.emplace_back();
        CongruenceCondition l1;
        l1.set_infinite(1, LaurentSeries::one(F));
        conds.push_back(l1);
        for (unsigned c = 0; c < q; ++c) {
            CongruenceCondition l2;
            l2.set_infinite(2, LaurentSeries(F, 0, {felem(1), felem(c)}));
            conds.push_back(l2);
        }
        for (const auto& L : {DirichletSeries::zeta(F), DirichletSeries::carlitz(F)}) {
            for (const auto& cond : conds) {
                for (std::uint64_t j = 0; j <= 16; ++j) {
                    MeasureRouteResult r = partial_via_measure(B, L, cond, j, depth, 64);
                    SpecialScan opt;
                    opt.d_max = depth;
                    SpecialPoly direct = special_polynomial(L, j, cond, opt);
                    ++runs;
                    if (!r.certified) {
                        ++uncert;
                        continue;
                    }
                    if (r.poly.coeffs.size() < std::size_t(depth) + 1 ||
                        direct.coeffs.size() != std::size_t(depth) + 1) {
                        ++mismatch;
                        continue;
                    }
                    for (int d = 0; d <= depth; ++d)
                        if (!(r.poly.coeffs[std::size_t(d)] == direct.coeffs[std::size_t(d)])) {
                            ++mismatch;
                            break;
                        }
                }
            }
        }
    }
    if (uncert || mismatch) ok = false;
    double el = secs(t0);
    ok = ok && el < 120.0;
    report(3, "measure route equals direct summation", ok,
           fmt("%llu combinations, %llu uncertified, %llu mismatching; %.2fs (budget 120s)", runs,
               uncert, mismatch, el));
}

// ---------------------------------------------------------------- criterion 4
// Measure algebra: dirac convolution adds the points, the divided derivative
// lowers a digit index with a binomial factor, divided powers compose with
// C(i+j,i), and the transform intertwines the action with hyperderivatives.

void criterion4() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long checks = 0, bad = 0;

    {
        FqField F(2);
        NewtonBasis B(F);
        // dirac convolution over all pairs of the first 16 interpolation points
        for (std::uint64_t mi = 0; mi < 16; ++mi)
            for (std::uint64_t mj = 0; mj < 16; ++mj) {
                LaurentSeries a = B.point(mi), b = B.point(mj);
                Measure lhs =
                    convolve(B, dirac(B, BasisTag::digit, a, 16), dirac(B, BasisTag::digit, b, 16));
                Measure rhs = dirac(B, BasisTag::digit, a + b, 16);
                for (std::size_t n = 0; n <= 16; ++n) {
                    ++checks;
                    if (!lhs.coeff(n).agrees_with(rhs.coeff(n))) ++bad;
                }
            }
        // differentiation action on every digit polynomial, orders i <= 4
        for (std::size_t n = 0; n <= 16; ++n) {
            std::vector<LaurentSeries> a(n + 1, LaurentSeries::zero(F));
            a[n] = LaurentSeries::one(F);
            for (std::size_t i = 0; i <= 4; ++i) {
                auto c = act(B, divided_derivative(F, i, 16), a);
                unsigned bc = i <= n ? binom_mod_p(F.p(), n, i) : 0;
                for (std::size_t m = 0; m < c.size(); ++m) {
                    ++checks;
                    bool hit = i <= n && m == n - i && bc != 0;
                    if (hit && !(c[m] == LaurentSeries::monomial(F, 0, F.from_int((long long)bc))))
                        ++bad;
                    if (!hit && !c[m].is_exact_zero()) ++bad;
                }
            }
        }
        // divided-power composition, all i, j <= 4
        for (std::size_t i = 0; i <= 4; ++i)
            for (std::size_t j = 0; j <= 4; ++j) {
                Measure dd =
                    convolve(B, divided_derivative(F, i, 16), divided_derivative(F, j, 16));
                unsigned bc = binom_mod_p(F.p(), (unsigned long long)(i + j), (unsigned long long)i);
                for (std::size_t n = 0; n <= 16; ++n) {
                    ++checks;
                    bool hit = n == i + j && bc != 0;
                    if (hit && !(dd.coeff(n) == LaurentSeries::monomial(F, 0, F.from_int((long long)bc))))
                        ++bad;
                    if (!hit && !dd.coeff(n).is_exact_zero()) ++bad;
                }
            }
        // transform identity on every digit polynomial, orders i <= 4
        for (std::size_t k = 0; k <= 16; ++k) {
            auto a = digit_expand(B, B.digit_poly(k));
            ++checks;
            if (!transform_series(F, a).agrees_with(TateSeries::z_power(F, int(k)))) ++bad;
            for (unsigned i = 1; i <= 4; ++i) {
                auto c = act(B, divided_derivative(F, i, 16), a);
                ++checks;
                if (!transform_series(F, c).agrees_with(
                        hyperderivative(transform_series(F, a), i)))
                    ++bad;
            }
        }
    }

    {
        // 30 random instances over F_3, cycling through the four laws
        FqField F(3);
        NewtonBasis B(F);
        std::mt19937_64 rng(777);
        auto random_point = [&](int digits) {
            std::vector<felem> w;
            for (int i = 0; i < digits; ++i) w.push_back(felem(rng() % 3));
            return LaurentSeries(F, 0, std::move(w));
        };
        auto random_vec = [&](std::size_t n) {
            std::vector<LaurentSeries> a;
            for (std::size_t k = 0; k <= n; ++k) a.push_back(random_point(6));
            return a;
        };
        for (int trial = 0; trial < 30; ++trial) {
            switch (trial % 4) {
                case 0: {
                    LaurentSeries a = random_point(8), b = random_point(8);
                    Measure lhs = convolve(B, dirac(B, BasisTag::digit, a, 12),
                                           dirac(B, BasisTag::digit, b, 12));
                    Measure rhs = dirac(B, BasisTag::digit, a + b, 12);
                    for (std::size_t n = 0; n <= 12; ++n) {
                        ++checks;
                        if (!lhs.coeff(n).agrees_with(rhs.coeff(n))) ++bad;
                    }
                    break;
                }
                case 1: {
                    std::size_t n = 4 + rng() % 9;
                    std::size_t i = rng() % 5;
                    auto a = random_vec(n);
                    auto c = act(B, divided_derivative(F, i, n), a);
                    // against the definitional shift with binomial weights
                    for (std::size_t m = 0; m < c.size(); ++m) {
                        unsigned bc = binom_mod_p(F.p(), (unsigned long long)(m + i),
                                                  (unsigned long long)i);
                        LaurentSeries want = m + i < a.size() && bc
                                                 ? a[m + i].scale(F.from_int((long long)bc))
                                                 : LaurentSeries::zero(F);
                        ++checks;
                        if (!c[m].agrees_with(want)) ++bad;
                    }
                    break;
                }
                case 2: {
                    std::size_t i = rng() % 5, j = rng() % 5;
                    Measure dd =
                        convolve(B, divided_derivative(F, i, 12), divided_derivative(F, j, 12));
                    unsigned bc =
                        binom_mod_p(F.p(), (unsigned long long)(i + j), (unsigned long long)i);
                    for (std::size_t n = 0; n <= 12; ++n) {
                        ++checks;
                        bool hit = n == i + j && bc != 0;
                        if (hit &&
                            !(dd.coeff(n) == LaurentSeries::monomial(F, 0, F.from_int((long long)bc))))
                            ++bad;
                        if (!hit && !dd.coeff(n).is_exact_zero()) ++bad;
                    }
                    break;
                }
                default: {
                    auto a = random_vec(8);
                    unsigned i = unsigned(rng() % 4);
                    auto c = act(B, divided_derivative(F, i, 8), a);
                    ++checks;
                    if (!transform_series(F, c).agrees_with(
                            hyperderivative(transform_series(F, a), i)))
                        ++bad;
                    break;
                }
            }
        }
    }

    if (bad) ok = false;
    double el = secs(t0);
    ok = ok && el < 30.0;
    report(4, "measure algebra laws", ok,
           fmt("%llu checks, %llu failures; %.2fs (budget 30s)", checks, bad, el));
}

// ---------------------------------------------------------------- criterion 5
// The interpolation basis: valuations of p_n at every node dominate the
// weight w(n) and attain it, the weight formulas hit their pinned spot
// values, and the expansion coefficients of the extended power function
// carry an order-1 signature at five exponents.

void criterion5() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string note;

    for (unsigned q : {2u, 3u}) {
        FqField F(q);
        NewtonBasis B(F);
        std::vector<long long> minv(65, std::numeric_limits<long long>::max());
        unsigned long long bad = 0;
        for (std::uint64_t m = 0; m <= 200; ++m) {
            auto pv = B.newton_values(B.point(m), 65);
            for (std::size_t n = 0; n <= 64; ++n) {
                if (pv[n].known_zero()) {
                    if (m >= n) ++bad;  // nodes are distinct, zero only below the index
                    continue;
                }
                long long v = pv[n].val();
                if (v < NewtonBasis::weight(q, n)) ++bad;
                minv[n] = std::min(minv[n], v);
            }
        }
        for (std::size_t n = 0; n <= 64; ++n)
            if (minv[n] != NewtonBasis::weight(q, n)) ++bad;  // equality attained
        if (bad) ok = false;
        note += fmt("q=%u: valuation law on 201x65 values; ", q);
    }

    if (!(NewtonBasis::weight(2, 3) == 1 && NewtonBasis::weight(2, 8) == 7 &&
          NewtonBasis::weight_partial(2, 5, 1) == 2))
        ok = false;

    // five exponents; the power function extended by zero off the 1-units
    {
        FqField F(2);
        NewtonBasis B(F);
        const std::size_t N = 128;
        const int prec = 100;
        std::vector<std::uint8_t> dg1, dg2;
        for (int i = 0; i < 40; ++i) dg1.push_back(std::uint8_t(i % 2));
        for (int i = 0; i < 40; ++i) dg2.push_back(std::uint8_t((i + 1) % 2));
        std::vector<PadicExponent> ys{PadicExponent(2, -1), PadicExponent(2, -3),
                                      PadicExponent(2, -17), PadicExponent(2, dg1),
                                      PadicExponent(2, dg2)};
        int consistent = 0;
        for (const auto& y : ys) {
            std::vector<LaurentSeries> vals;
            for (std::uint64_t m = 0; m < N; ++m) {
                LaurentSeries pt = B.point(m);
                bool one_unit = !pt.known_zero() && pt.val() == 0 && pt.coeff(0) == 1;
                vals.push_back(one_unit ? one_unit_pow(pt.truncated(prec), y, prec)
                                        : LaurentSeries::zero_mod(F, prec));
            }
            auto a = newton_coefficients(B, vals, prec);
            std::vector<std::pair<std::uint64_t, long long>> sample;
            for (std::size_t n = 0; n < a.size(); ++n)
                if (!a[n].known_zero()) sample.emplace_back(n, a[n].val());
            auto rep = amice_order_check(2, sample, 1);
            if (rep.verdict == "consistent with order 1") ++consistent;
        }
        if (consistent != 5) ok = false;
        note += fmt("order-1 verdict at %d/5 exponents; ", consistent);
    }

    double el = secs(t0);
    ok = ok && el < 60.0;
    report(5, "interpolation basis valuations and order classifier", ok,
           note + fmt("%.2fs (budget 60s)", el));
}

// ---------------------------------------------------------------- criterion 6
// p-adic side: the shift action on Mahler coefficients, the eigenfunction
// identity for the full algebra mod p^8 to degree 12, and the values <->
// coefficients round trip.

void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long checks = 0, bad = 0;
    std::mt19937_64 rng(424242);
    for (unsigned p : {2u, 3u, 5u}) {
        const unsigned N = 8, D = 12;
        IwasawaSeries X = IwasawaSeries::X(p, N, D);
        for (unsigned k = 0; k <= D; ++k) {
            MahlerFunction ck = MahlerFunction::basis(p, N, k);
            MahlerFunction want =
                k ? MahlerFunction::basis(p, N, k - 1) : MahlerFunction::zero(p, N);
            ++checks;
            if (!(act(X, ck) == want)) ++bad;
        }
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<PadicInt> c;
            for (unsigned i = 0; i <= 6; ++i)
                c.emplace_back(p, N, (long long)(rng() % 1000));
            IwasawaSeries Fs(p, N, D, std::move(c));
            PadicInt m(p, N, (long long)(p * (1 + rng() % 40)));
            ++checks;
            if (!eigen_check(Fs, m, D)) ++bad;
        }
        ++checks;
        if (!eigen_check(X, PadicInt(p, N, (long long)p), D)) ++bad;
        ++checks;
        if (!eigen_check(X * X, PadicInt(p, N, (long long)p), D)) ++bad;
    }
    // 50 random value lists
    for (int trial = 0; trial < 50; ++trial) {
        unsigned p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
        const unsigned N = 8;
        std::size_t len = 6 + rng() % 15;
        std::vector<PadicInt> values;
        for (std::size_t i = 0; i < len; ++i)
            values.emplace_back(p, N, (long long)(rng() % 100000));
        MahlerFunction f(p, N, mahler_from_values(values));
        for (std::size_t i = 0; i < len; ++i) {
            ++checks;
            if (!(f.value(i) == values[i])) ++bad;
        }
    }
    if (bad) ok = false;
    double el = secs(t0);
    ok = ok && el < 10.0;
    report(6, "p-adic action, eigenfunctions, Mahler round trip", ok,
           fmt("%llu checks, %llu failures; %.2fs (budget 10s)", checks, bad, el));
}

// ---------------------------------------------------------------- criterion 7
// Finite places: Teichmuller lifts are Frobenius fixed points congruent to
// their seed, integer points of the exponent space recover plain powers,
// and the place-removed special value matches the infinite-place special
// polynomial with that Euler factor taken out, all mod f^8.

void criterion7() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long checks = 0, bad = 0;
    FqField F(2);
    FqPoly T = FqPoly::T(F), one = FqPoly::one(F);
    std::mt19937_64 rng(99);
    DirichletSeries Z = DirichletSeries::zeta(F), C = DirichletSeries::carlitz(F);
    for (const FqPoly& f : {T, T + one, T * T + T + one}) {
        unsigned dv = unsigned(f.degree());
        FqPoly fN = f.pow(8);
        std::uint64_t qv = 1;
        for (unsigned i = 0; i < dv; ++i) qv *= 2;
        auto random_unit = [&]() {
            for (;;) {
                std::vector<felem> c;
                for (unsigned i = 0; i < dv * 8; ++i) c.push_back(felem(rng() & 1));
                VadicResidue r(f, 8, FqPoly(F, c));
                if (r.is_unit()) return r;
            }
        };
        for (int trial = 0; trial < 20; ++trial) {
            VadicResidue b = random_unit();
            VadicResidue w = teichmuller(b);
            checks += 3;
            if (!(w.pow(qv) == w)) ++bad;
            if ((w - b).valuation() < 1) ++bad;
            if (!(teichmuller(w) == w)) ++bad;
        }
        for (std::uint64_t j = 0; j <= 16; ++j) {
            for (int trial = 0; trial < 5; ++trial) {
                VadicResidue b = random_unit();
                SvExponent y = SvExponent::integer_point(2, (long long)j, qv - 1);
                ++checks;
                if (!(vadic_pow(b, y) == b.pow(j))) ++bad;
            }
        }
        for (const DirichletSeries* L : {&Z, &C}) {
            for (std::uint64_t j = 0; j <= 12; ++j) {
                VadicSpecialPoly v = vadic_special_value(*L, j, f, 8);
                std::uint64_t jj = j + std::uint64_t(L->twist());
                SpecialScan sc;
                sc.d_max = int(v.d_max) + int(dv);
                SpecialPoly z = special_polynomial(*L, j, {}, sc);
                for (unsigned d = 0; d <= v.d_max; ++d) {
                    FqPoly want = z.coeffs[d];
                    if (d >= dv) want = want - f.pow(jj) * z.coeffs[d - dv];
                    ++checks;
                    if (!(v.coeffs[d] == want % fN)) ++bad;
                }
            }
        }
    }
    if (bad) ok = false;
    double el = secs(t0);
    ok = ok && el < 60.0;
    report(7, "finite-place compatibility mod f^8", ok,
           fmt("%llu checks, %llu failures; %.2fs (budget 60s)", checks, bad, el));
}

// ---------------------------------------------------------------- criterion 8
// Euler products: the zeta factors expand to b_a = 1, the module factors to
// b_a = a, and deleting one local factor kills exactly the multiples.

void criterion8() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long checks = 0, bad = 0;
    FqField F(2);
    FqPoly T = FqPoly::T(F), one = FqPoly::one(F);
    auto zt = euler_expand(F, 6, euler_zeta_factors(F));
    for (const auto& [a, b] : zt) {
        ++checks;
        if (!(b == one)) ++bad;
    }
    auto ct = euler_expand(F, 6, euler_carlitz_factors(F));
    for (const auto& [a, b] : ct) {
        ++checks;
        if (!(b == a)) ++bad;
    }
    for (const FqPoly& f : {T + one, T * T + T + one}) {
        auto rt = euler_expand(F, 6, [&](const FqPoly& P) {
            if (P == f) return std::vector<FqPoly>{FqPoly::one(F)};
            return std::vector<FqPoly>{FqPoly::one(F), -FqPoly::one(F)};
        });
        for (const auto& [a, b] : rt) {
            ++checks;
            bool multiple = (a % f).is_zero();
            if (multiple && !b.is_zero()) ++bad;
            if (!multiple && !(b == one)) ++bad;
        }
    }
    if (bad) ok = false;
    double el = secs(t0);
    ok = ok && el < 10.0;
    report(8, "Euler factor expansion", ok,
           fmt("%llu monic coefficients, %llu failures; %.2fs (budget 10s)", checks, bad, el));
}

// ---------------------------------------------------------------- criterion 9
// Masses of depth-1 and depth-2 cosets under the canonical measure are
// polynomials in x^{-1} with constant coefficients: three sample values of
// x determine them, a held-out fourth confirms, and the coefficients match
// the conditioned special polynomial at j = 0.

void criterion9() {
    auto t0 = Clock::now();
    bool ok = true;
    unsigned long long checks = 0, bad = 0;
    FqField F(2);
    NewtonBasis B(F);
    DirichletSeries Z = DirichletSeries::zeta(F);
    const int prec = 24;

    std::vector<int> exps{-2, -3, -4, -5};  // x = u^e, three samples plus one held out
    std::vector<CanonicalMeasure> cms;
    for (int e : exps) cms.push_back(canonical_measure(B, Z, LaurentSeries::monomial(F, e), 63, 8));

    // cosets alpha + u^level F[[u]], level 1 and 2
    struct Coset {
        unsigned level;
        std::vector<felem> alpha;
    };
    std::vector<Coset> cosets{{1, {0}}, {1, {1}}, {2, {0, 0}}, {2, {1, 0}}, {2, {0, 1}}, {2, {1, 1}}};
    for (const Coset& co : cosets) {
        std::vector<LaurentSeries> vals;
        for (std::uint64_t m = 0; m < 64; ++m) {
            LaurentSeries pt = B.point(m);
            bool in = true;
            for (unsigned i = 0; i < co.level; ++i)
                in = in && pt.coeff(int(i)) == co.alpha[i];
            vals.push_back(in ? LaurentSeries::one(F).truncated(prec)
                              : LaurentSeries::zero_mod(F, prec));
        }
        std::vector<LaurentSeries> chi = newton_coefficients(B, vals, prec);
        std::vector<LaurentSeries> mass;
        for (const auto& cm : cms)
            mass.push_back(integrate(BasisTag::newton, chi, cm.mu, 0).value);

        // solve mass = c0 + c1 X + c2 X^2 at X = x^{-1} = u^{-e} from the
        // first three samples by elimination, in exact series arithmetic
        LaurentSeries X0 = LaurentSeries::monomial(F, -exps[0]);
        LaurentSeries X1 = LaurentSeries::monomial(F, -exps[1]);
        LaurentSeries X2 = LaurentSeries::monomial(F, -exps[2]);
        const int work = 20;
        LaurentSeries d01 = (mass[0] - mass[1]) * (X0 - X1).inverse(work);
        LaurentSeries d12 = (mass[1] - mass[2]) * (X1 - X2).inverse(work);
        LaurentSeries c2 = (d01 - d12) * (X0 - X2).inverse(work);
        LaurentSeries c1 = d01 - c2 * (X0 + X1);
        LaurentSeries c0 = mass[0] - c1 * X0 - c2 * X0 * X0;

        // the coefficients must be constants from F_2 (depth 12 residual)
        std::vector<FqPoly> poly;
        for (LaurentSeries* c : {&c0, &c1, &c2}) {
            felem digit = c->known_zero() ? felem(0) : c->coeff(0);
            LaurentSeries cval = LaurentSeries::from_poly(FqPoly::constant(F, digit));
            ++checks;
            if (!(*c - cval).truncated(12).known_zero()) ++bad;
            poly.push_back(FqPoly::constant(F, digit));
        }
        // held-out sample confirms, compared through depth 14
        LaurentSeries X3 = LaurentSeries::monomial(F, -exps[3]);
        LaurentSeries pred = LaurentSeries::from_poly(poly[0]) +
                             LaurentSeries::from_poly(poly[1]) * X3 +
                             LaurentSeries::from_poly(poly[2]) * X3 * X3;
        ++checks;
        if (!mass[3].truncated(14).agrees_with(pred.truncated(14))) ++bad;

        // and the coefficients are the conditioned special values at j = 0
        if (co.alpha[0] == 1) {
            std::vector<felem> digs(co.alpha);
            CongruenceCondition cond;
            cond.set_infinite(co.level, LaurentSeries(F, 0, std::move(digs)));
            SpecialScan sc;
            sc.d_max = 2;
            SpecialPoly z0 = special_polynomial(Z, 0, cond, sc);
            for (std::size_t k = 0; k < 3; ++k) {
                ++checks;
                if (!(z0.coeffs[k] == poly[k])) ++bad;
            }
        } else {
            // the measure lives on 1-units, so non-unit cosets carry no mass
            for (std::size_t k = 0; k < 3; ++k) {
                ++checks;
                if (!poly[k].is_zero()) ++bad;
            }
        }
    }
    if (bad) ok = false;
    double el = secs(t0);
    ok = ok && el < 10.0;
    report(9, "coset masses interpolate in 1/x", ok,
           fmt("6 cosets, %llu checks, %llu failures; %.2fs (budget 10s)", checks, bad, el));
}

}  // namespace

int main() {
    struct {
        void (*fn)();
        int n;
        const char* what;
    } crits[] = {
        {criterion1, 1, "power sums vanish below the subgroup order"},
        {criterion2, 2, "special polynomial degree bound, exhaustive"},
        {criterion3, 3, "measure route equals direct summation"},
        {criterion4, 4, "measure algebra laws"},
        {criterion5, 5, "interpolation basis valuations and order classifier"},
        {criterion6, 6, "p-adic action, eigenfunctions, Mahler round trip"},
        {criterion7, 7, "finite-place compatibility mod f^8"},
        {criterion8, 8, "Euler factor expansion"},
        {criterion9, 9, "coset masses interpolate in 1/x"},
    };
    for (const auto& c : crits) {
        try {
            c.fn();
        } catch (const std::exception& e) {
            report(c.n, c.what, false, std::string("exception: ") + e.what());
        }
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}

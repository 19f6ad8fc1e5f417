#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <fqzeta/fqpoly.hpp>
#include <fqzeta/laurent.hpp>
#include <fqzeta/padic_exponent.hpp>
#include <fqzeta/tate.hpp>

using namespace fqzeta;

namespace {

// Pascal-triangle binomials mod p, independent of the Lucas path
std::vector<std::vector<unsigned>> pascal_mod(unsigned p, unsigned n_max) {
    std::vector<std::vector<unsigned>> c(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) {
        c[n].assign(n + 1, 1);
        for (unsigned k = 1; k < n; ++k) c[n][k] = (c[n - 1][k - 1] + c[n - 1][k]) % p;
    }
    return c;
}

LaurentSeries random_series(const FqField& F, std::mt19937_64& rng, int val_lo = -3,
                            int len = 5) {
    std::vector<felem> w(static_cast<std::size_t>(len));
    for (auto& x : w) x = felem(rng() % F.q());
    int v = val_lo + int(rng() % 4);
    return LaurentSeries(F, v, std::move(w));
}

}  // namespace

TEST_CASE("laurent window and embedding") {
    FqField F(2);
    FqPoly a = FqPoly::parse_human(F, "T^3+T+1");
    LaurentSeries s = LaurentSeries::from_poly(a);
    REQUIRE(s.is_exact());
    REQUIRE(s.val() == -3);
    REQUIRE(s.coeff(-3) == 1);
    REQUIRE(s.coeff(-2) == 0);
    REQUIRE(s.coeff(-1) == 1);
    REQUIRE(s.coeff(0) == 1);
    REQUIRE(s.coeff(7) == 0);
    REQUIRE(s.to_poly_in_T() == a);

    LaurentSeries u = LaurentSeries::monomial(F, 1);
    REQUIRE((s * u * u * u).val() == 0);
}

TEST_CASE("laurent text form round trip") {
    FqField F(3);
    LaurentSeries s = LaurentSeries::parse(F, "-2; 1,0,2,0,1");
    REQUIRE(s.val() == -2);
    REQUIRE(s.precision() == 3);
    REQUIRE(s.coeff(0) == 2);
    REQUIRE(LaurentSeries::parse(F, s.to_text()) == s);

    LaurentSeries z = LaurentSeries::parse(F, "4;");
    REQUIRE(z.known_zero());
    REQUIRE(z.precision() == 4);
    REQUIRE(LaurentSeries::parse(F, z.to_text()) == z);

    REQUIRE(LaurentSeries::parse(F, "0") == LaurentSeries::zero(F));
}

TEST_CASE("laurent precision propagation") {
    FqField F(2);
    LaurentSeries a(F, 1, {1}, 5);               // u + O(u^5)
    LaurentSeries b = LaurentSeries::monomial(F, 2);  // exact u^2
    LaurentSeries ab = a * b;
    REQUIRE(ab.val() == 3);
    REQUIRE(ab.precision() == 7);

    LaurentSeries c(F, 0, {1, 1}, 3);
    REQUIRE((a + c).precision() == 3);
    REQUIRE((a * c).precision() == 4);  // min(5 + 0, 3 + 1)

    // additions beyond precision are dropped
    LaurentSeries d = LaurentSeries::monomial(F, 9) + a;
    REQUIRE(d.precision() == 5);
    REQUIRE(d == a);
}

TEST_CASE("laurent inverse and powers") {
    FqField F(2);
    LaurentSeries one_plus_u(F, 0, {1, 1});
    LaurentSeries inv = one_plus_u.inverse(6);
    // 1/(1+u) = 1 + u + u^2 + ... in characteristic 2
    for (int e = 0; e < 6; ++e) REQUIRE(inv.coeff(e) == 1);
    REQUIRE(inv.precision() == 6);
    LaurentSeries back = inv * one_plus_u;
    REQUIRE(back.agrees_with(LaurentSeries::one(F)));
    REQUIRE(back.precision() == 6);

    LaurentSeries p = one_plus_u.pow(3);
    REQUIRE(p == LaurentSeries(F, 0, {1, 1, 1, 1}));
    REQUIRE(one_plus_u.pow(-2, 8).agrees_with(inv * inv));

    FqField F3(3);
    LaurentSeries t = LaurentSeries::monomial(F3, -1);  // T itself
    REQUIRE(t.inverse(1) == LaurentSeries(F3, 1, {1}, 2));
}

TEST_CASE("binomials from digit windows") {
    // j = 0 always gives 1
    for (unsigned p : {2u, 3u, 5u}) {
        PadicExponent y(p, 7);
        REQUIRE(binom_mod_p(y, 0) == 1);
    }

    // y = -1: C(-1, j) = (-1)^j
    for (unsigned p : {2u, 3u, 5u}) {
        PadicExponent m1(p, -1);
        for (unsigned long long j = 0; j <= 50; ++j) {
            unsigned expect = (j % 2 == 0) ? 1u : (p - 1);
            REQUIRE(binom_mod_p(m1, j) == expect);
        }
    }

    // y = p, j = 1 -> C(p, 1) = p = 0
    for (unsigned p : {2u, 3u, 5u}) {
        PadicExponent yp(p, (long long)p);
        REQUIRE(binom_mod_p(yp, 1) == 0);
    }

    // agreement with Pascal triangle for 0 <= k <= n <= 40
    for (unsigned p : {2u, 3u, 5u}) {
        auto pas = pascal_mod(p, 40);
        for (unsigned n = 0; n <= 40; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                REQUIRE(binom_mod_p(p, n, k) == pas[n][k]);
                REQUIRE(binom_mod_p(PadicExponent(p, (long long)n), k) == pas[n][k]);
            }
    }

    // beyond the digit window the value is not determined
    PadicExponent tight(2, std::vector<std::uint8_t>{1, 1, 1});
    REQUIRE_THROWS_AS(binom_mod_p(tight, 8), std::domain_error);
}

TEST_CASE("one-unit exponentiation") {
    FqField F(2);
    LaurentSeries alpha(F, 0, {1, 1});  // 1 + u

    SECTION("y = 1 returns the base") {
        LaurentSeries r = one_unit_pow(alpha, PadicExponent(2, 1), 8);
        REQUIRE(r.agrees_with(alpha));
    }
    SECTION("Frobenius: (1+u)^p = 1 + u^p") {
        LaurentSeries r = one_unit_pow(alpha, PadicExponent(2, 2), 8);
        REQUIRE(r.agrees_with(LaurentSeries(F, 0, {1, 0, 1})));
    }
    SECTION("y = -1 inverts") {
        LaurentSeries r = one_unit_pow(alpha, PadicExponent(2, -1), 8);
        REQUIRE((r * alpha).agrees_with(LaurentSeries::one(F)));
        for (int e = 0; e < 8; ++e) REQUIRE(r.coeff(e) == 1);
    }
    SECTION("agrees with repeated multiplication for small integers") {
        for (unsigned q : {2u, 3u}) {
            FqField Fq_(q);
            LaurentSeries a(Fq_, 0, {1, 1, 0, felem(q - 1)});
            for (long long y = -8; y <= 8; ++y) {
                LaurentSeries lhs = one_unit_pow(a, PadicExponent(q, y), 10);
                LaurentSeries rhs = y >= 0 ? a.pow(y).truncated(10) : a.pow(y, 16).truncated(10);
                REQUIRE(lhs.agrees_with(rhs));
            }
        }
    }
    SECTION("homomorphism in the exponent") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 20; ++trial) {
            long long y1 = (long long)(rng() % 30) - 15;
            long long y2 = (long long)(rng() % 30) - 15;
            PadicExponent e1(2, y1), e2(2, y2);
            LaurentSeries lhs = one_unit_pow(alpha, e1 + e2, 10);
            LaurentSeries rhs = one_unit_pow(alpha, e1, 10) * one_unit_pow(alpha, e2, 10);
            REQUIRE(lhs.agrees_with(rhs));
        }
    }
    SECTION("iterated power is power of product") {
        for (long long y1 = -3; y1 <= 3; ++y1)
            for (long long y2 = -3; y2 <= 3; ++y2) {
                LaurentSeries lhs =
                    one_unit_pow(one_unit_pow(alpha, PadicExponent(2, y1), 12),
                                 PadicExponent(2, y2), 12);
                LaurentSeries rhs = one_unit_pow(alpha, PadicExponent(2, y1 * y2), 12);
                REQUIRE(lhs.agrees_with(rhs));
            }
    }
    SECTION("non-1-unit is rejected") {
        LaurentSeries bad(F, 1, {1});
        REQUIRE_THROWS_AS(one_unit_pow(bad, PadicExponent(2, 1), 4), std::domain_error);
    }
}

TEST_CASE("padic exponent arithmetic") {
    PadicExponent a(3, 14), b(3, -5);
    REQUIRE((a + b).is_exact_integer());
    REQUIRE((a + b).integer_value() == 9);
    REQUIRE((a * b).integer_value() == -70);
    REQUIRE((-a).integer_value() == -14);
    REQUIRE(PadicExponent(3, -1).digit(7) == 2);

    // windowed digits propagate
    PadicExponent w(2, std::vector<std::uint8_t>{1, 0, 1});
    REQUIRE(w.digit(2) == 1);
    REQUIRE_FALSE(w.digit_known(3));
}

TEST_CASE("hyperderivative on tate series") {
    FqField F(2);
    TateSeries f = TateSeries::z_power(F, 5);

    SECTION("i = 0 is the identity") {
        REQUIRE(hyperderivative(f, 0).agrees_with(f));
    }
    SECTION("z^q has zero first hyperderivative in characteristic p | q") {
        TateSeries zq = TateSeries::z_power(F, 2);
        REQUIRE(hyperderivative(zq, 1).is_zero());
        FqField F4(2, {1, 1, 1});
        REQUIRE(hyperderivative(TateSeries::z_power(F4, 4), 1).is_zero());
    }
    SECTION("composition carries C(i+j, i)") {
        // F = z^5, i = j = 1: C(2,1) = 0 mod 2, both sides vanish
        TateSeries lhs = hyperderivative(hyperderivative(f, 1), 1);
        REQUIRE(lhs.is_zero());
        REQUIRE(binom_mod_p(2u, 2ull, 1ull) == 0);
        // and a q=3 case where the constant is nonzero
        FqField F3(3);
        TateSeries g = TateSeries::z_power(F3, 5);
        TateSeries l3 = hyperderivative(hyperderivative(g, 1), 1);
        unsigned c = binom_mod_p(3u, 2ull, 1ull);
        TateSeries r3 = hyperderivative(g, 2).scale(LaurentSeries::monomial(F3, 0, felem(c)));
        REQUIRE(l3.agrees_with(r3));
    }
    SECTION("Leibniz rule in divided form") {
        std::mt19937_64 rng(31337);
        for (unsigned q : {2u, 3u}) {
            FqField Fq_(q);
            for (int trial = 0; trial < 8; ++trial) {
                std::vector<LaurentSeries> fc, gc;
                int df = int(rng() % 7), dg = int(rng() % 7);
                for (int i = 0; i <= df; ++i) fc.push_back(random_series(Fq_, rng));
                for (int i = 0; i <= dg; ++i) gc.push_back(random_series(Fq_, rng));
                TateSeries Ff(Fq_, fc), Gg(Fq_, gc);
                for (unsigned i = 0; i <= 4; ++i) {
                    TateSeries lhs = hyperderivative(Ff * Gg, i);
                    TateSeries rhs = TateSeries::zero(Fq_);
                    for (unsigned a = 0; a <= i; ++a)
                        rhs = rhs + hyperderivative(Ff, a) * hyperderivative(Gg, i - a);
                    REQUIRE(lhs.agrees_with(rhs));
                }
            }
        }
    }
}

TEST_CASE("gauss norm") {
    FqField F(2);
    REQUIRE(gauss_norm(TateSeries::z_power(F, 1)) == 0);

    TateSeries f(F, {LaurentSeries::monomial(F, 3), LaurentSeries::monomial(F, 1)});
    REQUIRE(gauss_norm(f) == 1);

    REQUIRE_THROWS_AS(gauss_norm(TateSeries::zero(F)), std::domain_error);

    // insufficient precision on an apparently-zero coefficient
    TateSeries g(F, {LaurentSeries::zero_mod(F, 0), LaurentSeries::monomial(F, 1)});
    REQUIRE_THROWS_AS(gauss_norm(g), std::domain_error);
}

TEST_CASE("tate series evaluation") {
    FqField F(3);
    LaurentSeries u = LaurentSeries::monomial(F, 1);
    // (z + u)^2 at z = u is (2u)^2 = u^2
    TateSeries f(F, {u, LaurentSeries::one(F)});
    LaurentSeries v = (f * f).eval(u);
    REQUIRE(v == u * u);
}

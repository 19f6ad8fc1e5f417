// Degrees of the special polynomials z(x, -j) grow like log_q(j+1): each
// stratum sum S_d(j) vanishes outright until j reaches q^d - 1.  This prints
// the degree next to the bound and flags the jump points.

#include <fqzeta/fqzeta.hpp>

#include <cstdio>

using namespace fqzeta;

int main() {
    for (unsigned q : {2u, 3u}) {
        FqField F(q);
        DirichletSeries L = DirichletSeries::zeta(F);
        std::printf("q = %u\n", q);
        std::printf("%6s %7s %6s\n", "j", "degree", "bound");
        std::uint64_t next_jump = q - 1;
        for (std::uint64_t j = 1; j <= 100; ++j) {
            SpecialPoly z = special_polynomial(L, j);
            unsigned bound = ilog_base(q, j + 1);
            bool jump = j + 1 == next_jump + 1 && j == next_jump;
            std::printf("%6llu %7d %6u%s\n", (unsigned long long)j, z.degree(), bound,
                        jump ? "  <- new stratum survives" : "");
            if (jump) next_jump = next_jump * q + (q - 1);
        }
        std::printf("\n");
    }
    return 0;
}

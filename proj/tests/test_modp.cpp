#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diagon/diagonal.hpp"
#include "diagon/dfinite.hpp"
#include "diagon/expr.hpp"
#include "diagon/modp.hpp"

using namespace diagon;

namespace {

FpSeries diag_modp(std::uint64_t p, int T) {
    return reduce_mod_p(diagonal("1/(1-z1-z2-z0*z1-z0*z2)", 3, T), p);
}

}  // namespace

TEST_CASE("reduce_mod_p") {
    FpSeries f3 = diag_modp(3, 14);
    // 1 + z + z^3 + z^4 + z^9 + z^10 + z^12 + z^13 pattern
    std::vector<std::uint64_t> want = {1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0};
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(f3.coeffs[k] == want[k]);
    // equals the reduction of (1+z)^{-1/2}
    USeries root = expand_univariate("(1+x)^(-1/2)", 14);
    FpSeries r3 = reduce_mod_p(root, 3);
    CHECK(r3.coeffs == f3.coeffs);

    // parity of an integer series
    FpSeries par = reduce_mod_p(expand_univariate("1/(1-x-x^2)", 10), 2);
    std::vector<std::uint64_t> fib = {1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1};
    CHECK(par.coeffs == fib);

    // 2F1([1/2,1/2],[1],16z) mod 5: 1 + 4z + z^2 + 4z^5 + z^6 + 4z^7 + z^10
    USeries ell = pfq_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, 16, 12);
    FpSeries e5 = reduce_mod_p(ell, 5);
    std::vector<std::uint64_t> wante = {1, 4, 1, 0, 0, 4, 1, 4, 0, 0, 1, 4, 1};
    CHECK(e5.coeffs == wante);

    // rejection names the index
    CHECK_THROWS_WITH_AS(reduce_mod_p(expand_univariate("1/(1-x/3)", 6), 3),
                         "reduce_mod_p: p divides denominator at index 1", domain_error);
}

TEST_CASE("minpoly_mod_p recovers the printed relations") {
    // mod 3: (1+z) y^2 - 1
    auto r3 = minpoly_mod_p(diag_modp(3, 24), 2, 2, 4);
    REQUIRE(r3.has_value());
    CHECK(r3->dy == 2);
    CHECK(r3->dx == 1);
    CHECK(r3->coeff[2] == std::vector<std::uint64_t>{1, 1});
    CHECK(r3->coeff[1] == std::vector<std::uint64_t>{0, 0});
    CHECK(r3->coeff[0] == std::vector<std::uint64_t>{2, 0});

    // mod 5: (1 - z + z^2) y^4 - 1
    auto r5 = minpoly_mod_p(diag_modp(5, 40), 2, 4, 4);
    REQUIRE(r5.has_value());
    CHECK(r5->dy == 4);
    CHECK(r5->coeff[4] == std::vector<std::uint64_t>{1, 4, 1});
    CHECK(r5->coeff[0] == std::vector<std::uint64_t>{4, 0, 0});
    for (int j = 1; j < 4; ++j)
        for (auto c : r5->coeff[j]) CHECK(c == 0);

    // mod 7: (1 + 4z + z^2 + z^3) y^6 - 1
    auto r7 = minpoly_mod_p(diag_modp(7, 60), 3, 6, 4);
    REQUIRE(r7.has_value());
    CHECK(r7->dy == 6);
    CHECK(r7->coeff[6] == std::vector<std::uint64_t>{1, 4, 1, 1});
    CHECK(r7->coeff[0] == std::vector<std::uint64_t>{6, 0, 0, 0});

    // a rational series has a degree-one relation
    auto rr = minpoly_mod_p(reduce_mod_p(expand_univariate("1/(1-x)", 20), 5), 2, 3, 4);
    REQUIRE(rr.has_value());
    CHECK(rr->dy == 1);

    // smaller bounds яield NotFound (true minimality witness)
    CHECK(!minpoly_mod_p(diag_modp(3, 24), 2, 1, 4).has_value());

    // increasing the guard never changes the relation
    auto r3b = minpoly_mod_p(diag_modp(3, 30), 2, 2, 10);
    REQUIRE(r3b.has_value());
    CHECK(r3b->coeff == r3->coeff);
}

TEST_CASE("relations verify against the series") {
    auto r5 = minpoly_mod_p(diag_modp(5, 40), 2, 4, 6);
    REQUIRE(r5.has_value());
    CHECK(verify_relation(*r5, diag_modp(5, 60)));
}

TEST_CASE("hasse polynomials") {
    CHECK(hasse_poly(11) == std::vector<std::uint64_t>{1, 4, 3, 4, 5, 1});
    CHECK(hasse_poly(3) == std::vector<std::uint64_t>{1, 1});
    CHECK(hasse_poly(5).size() == 3);  // degree (p-1)/2

    // the power-and-truncate oracle: P f^{p-1} = 1 (mod p, to high order)
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
        int T = 40;
        USeries ell = pfq_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, 16, T);
        FpSeries f = reduce_mod_p(ell, p);
        FpCtx F(p);
        auto poly = hasse_poly(p);
        // f^{p-1} * P truncated
        std::vector<std::uint64_t> acc(T + 1, 0);
        acc[0] = 1;
        for (std::uint64_t e = 0; e + 1 < p; ++e) {
            std::vector<std::uint64_t> nxt(T + 1, 0);
            for (int i = 0; i <= T; ++i) {
                if (acc[i] == 0) continue;
                for (int j = 0; i + j <= T; ++j)
                    nxt[i + j] = F.add(nxt[i + j], F.mul(acc[i], f.coeffs[j]));
            }
            acc = nxt;
        }
        std::vector<std::uint64_t> prod(T + 1, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int j = 0; static_cast<int>(i) + j <= T; ++j)
                prod[i + j] = F.add(prod[i + j], F.mul(poly[i], acc[j]));
        CHECK(prod[0] == 1);
        for (int k = 1; k <= T; ++k) CHECK(prod[k] == 0);
    }

    // Frobenius sanity: the minimal relation is hasse-poly times y^{p-1} minus 1
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        auto rel = minpoly_mod_p(diag_modp(p, 70), 3, static_cast<int>(p) - 1, 4);
        REQUIRE(rel.has_value());
        CHECK(rel->dy == static_cast<int>(p) - 1);
        // relation top row equals the hasse polynomial of the shifted argument:
        // Q(z) agrees with hasse_poly up to the variable normalisation used by
        // the mod-p displays; check Q times f^{p-1} = 1 instead
        FpSeries f = diag_modp(p, 70);
        CHECK(verify_relation(*rel, f));
    }
    CHECK_THROWS_AS(hasse_poly(2), domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diagon/catalog.hpp"
#include "diagon/integrality.hpp"
#include "diagon/dfinite.hpp"
#include "diagon/diagonal.hpp"
#include "diagon/expr.hpp"

using namespace diagon;

TEST_CASE("find_rescaling on hypergeometric families") {
    // 2F1([1/3,2/3],[1],x): Eisenstein constant 27
    USeries f = pfq_series({Rat(1, 3), Rat(2, 3)}, {Rat(1)}, 1, 60);
    IntegralityVerdict v = find_rescaling(f);
    CHECK(v.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(v.rescale == 27);

    // the Christol blind spot: 3F2([1/9,4/9,5/9],[1/3,1],x) with N = 3^6
    USeries g = pfq_series({Rat(1, 9), Rat(4, 9), Rat(5, 9)}, {Rat(1, 3), Rat(1)}, 1, 60);
    IntegralityVerdict vg = find_rescaling(g);
    CHECK(vg.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(vg.rescale == 729);
    // the rescaled series has the printed integer prefix
    USeries gr = pfq_series({Rat(1, 9), Rat(4, 9), Rat(5, 9)}, {Rat(1, 3), Rat(1)}, 729, 5);
    CHECK(gr[1] == 60);
    CHECK(gr[2] == 20475);
    CHECK(gr[3] == 9373650);
    CHECK(gr[4] == rat_from_string("4881796920"));

    // integer input: N = 1
    USeries zi = diagonal("1/(1-z1-z2-z0*z1-z0*z2)", 3, 10);
    IntegralityVerdict vi = find_rescaling(zi);
    CHECK(vi.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(vi.rescale == 1);
}

TEST_CASE("logarithmically bounded family is flagged as not globally bounded") {
    USeries f = pfq_series({Rat(1, 4), Rat(1, 2)}, {Rat(5, 4)}, 4, 60);
    IntegralityVerdict v = find_rescaling(f);
    CHECK(v.kind == IntegralityKind::LikelyNotGloballyBounded);
    // witnesses include 5, 13, 17, 29 and at least four primes = 1 mod 4
    auto has = [&](long p) {
        for (const auto& w : v.witness_primes)
            if (w == p) return true;
        return false;
    };
    CHECK(has(5));
    CHECK(has(13));
    CHECK(has(17));
    CHECK(has(29));
    int count14 = 0;
    for (const auto& w : v.witness_primes)
        if (w % 4 == 1) ++count14;
    CHECK(count14 >= 4);
}

TEST_CASE("log_bounded_check") {
    USeries f = pfq_series({Rat(1, 4), Rat(1, 2)}, {Rat(5, 4)}, 4, 60);
    auto prof = log_bounded_check(f, {Int(5), Int(13)});
    CHECK(prof[0].second);
    CHECK(prof[1].second);
    // integer series: trivially true
    USeries zi = expand_univariate("1/(1-2*x)", 40);
    auto pi = log_bounded_check(zi, {Int(2), Int(3)});
    CHECK(pi[0].second);
    CHECK(pi[1].second);
    // geometric counterexample sum x^n/3^n
    USeries geo = expand_univariate("1/(1-x/3)", 40);
    auto pg = log_bounded_check(geo, {Int(3)});
    CHECK(!pg[0].second);
}

TEST_CASE("apply_then_check") {
    // (4 theta + 1) turns 2F1([1/4,1/2],[5/4],x) into (1-x)^{-1/2}
    LinDiffOp fourtheta({UPoly(Rat(1)), UPoly::x() * Rat(4)});
    USeries f = pfq_series({Rat(1, 4), Rat(1, 2)}, {Rat(5, 4)}, 1, 60);
    auto [img, v] = apply_then_check(fourtheta, f);
    CHECK(img.truncated(20) == expand_univariate("(1-x)^(-1/2)", 20));
    CHECK(v.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(v.rescale == 4);

    // (6 theta + 1) on 2F1([1/3,1/6],[7/6],9x) gives 1F0([1/3],[],9x): integers
    LinDiffOp sixtheta({UPoly(Rat(1)), UPoly::x() * Rat(6)});
    USeries g = pfq_series({Rat(1, 3), Rat(1, 6)}, {Rat(7, 6)}, 9, 40);
    auto [img2, v2] = apply_then_check(sixtheta, g);
    CHECK(img2[1] == 3);
    CHECK(img2[2] == 18);
    CHECK(img2[3] == 126);
    CHECK(v2.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(v2.rescale == 1);

    // theta keeps integer series integer
    LinDiffOp theta({UPoly(), UPoly::x()});
    USeries zi = expand_univariate("1/(1-3*x)", 30);
    auto [img3, v3] = apply_then_check(theta, zi);
    CHECK(v3.rescale == 1);
}

TEST_CASE("verdict invariants") {
    USeries f = pfq_series({Rat(1, 3), Rat(2, 3)}, {Rat(1)}, 1, 50);
    IntegralityVerdict v = find_rescaling(f);
    REQUIRE(v.kind == IntegralityKind::GloballyBoundedWith);
    // substituting x -> N x clears every denominator on the window
    USeries fr = f.rescale(Rat(v.rescale));
    for (int n = 0; n <= fr.trunc(); ++n) CHECK(denominator(fr[n]) == 1);
    // invariant under scaling by a nonzero integer constant
    IntegralityVerdict v7 = find_rescaling(f * Rat(7));
    CHECK(v7.rescale == v.rescale);
    // hadamard of bounded is bounded; the product rescale works (not minimal)
    USeries g = pfq_series({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, 1, 50);
    IntegralityVerdict vg = find_rescaling(g);
    USeries h = hadamard(f, g);
    USeries hr = h.rescale(Rat(v.rescale * vg.rescale));
    for (int n = 0; n <= hr.trunc(); ++n) CHECK(denominator(hr[n]) == 1);
    IntegralityVerdict vh = find_rescaling(h);
    CHECK(vh.kind == IntegralityKind::GloballyBoundedWith);
    // monotone in the window: never flips negative -> positive with smaller N
    USeries f30 = pfq_series({Rat(1, 3), Rat(2, 3)}, {Rat(1)}, 1, 30);
    IntegralityVerdict v30 = find_rescaling(f30);
    CHECK(v30.kind == IntegralityKind::GloballyBoundedWith);
    CHECK(v.rescale % v30.rescale == 0);
    USeries nb30 = pfq_series({Rat(1, 4), Rat(1, 2)}, {Rat(5, 4)}, 4, 30);
    USeries nb60 = pfq_series({Rat(1, 4), Rat(1, 2)}, {Rat(5, 4)}, 4, 60);
    CHECK(find_rescaling(nb30).kind == IntegralityKind::LikelyNotGloballyBounded);
    IntegralityVerdict v60 = find_rescaling(nb60);
    CHECK(v60.kind == IntegralityKind::LikelyNotGloballyBounded);
    CHECK(v60.witness_primes.size() >= find_rescaling(nb30).witness_primes.size());
}

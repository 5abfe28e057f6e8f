#pragma once

#include <optional>

#include "diagon/fp.hpp"
#include "diagon/upoly.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Coefficientwise residue; rejects (naming the index) when p divides a
// denominator.
FpSeries reduce_mod_p(const USeries& f, std::uint64_t p);

// Bivariate relation C(x, y) = sum c_{ij} x^i y^j with C(x, f) = 0 (mod p, x^{T+1}).
struct AlgRelation {
    std::uint64_t p = 0;
    int dx = 0, dy = 0;
    // coeff[j][i] = c_{ij}, j = y-degree up to dy, i = x-degree up to dx
    std::vector<std::vector<std::uint64_t>> coeff;
    int guard = 0;
    std::string str() const;  // printed in the y^j (poly in x) style
};

// Smallest relation (by dy, then dx, ties by term order) found by nullspace
// over F_p, re-verified on `guard` extra terms. Empty optional = NotFound
// within the bounds.
std::optional<AlgRelation> minpoly_mod_p(const FpSeries& f, int dx, int dy, int guard);

// sum_{n=0}^{(p-1)/2} C(p - 1/2, n)^2 (16 z)^n mod p, as a polynomial over F_p
// (returned with lifted integer coefficients in [0, p)).
std::vector<std::uint64_t> hasse_poly(std::uint64_t p);

// substitutes the series into the relation; true if zero through the window
bool verify_relation(const AlgRelation& rel, const FpSeries& f);

}  // namespace diagon

#pragma once

#include <optional>

#include "diagon/bivar.hpp"
#include "diagon/expr.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Coefficient m of the result is the coefficient of z0^m .. z{nvars-1}^m in the
// Taylor expansion of the expression.
USeries diagonal(const ExprPtr& expr, int nvars, int trunc);
USeries diagonal(const std::string& expr_text, int nvars, int trunc);

// Coefficientwise product.
USeries hadamard(const USeries& f, const USeries& g);
// Coefficient of x^N is sum_{n+m=N} C(n+m, n) a_n b_m.
USeries hurwitz(const USeries& f, const USeries& g);
// Coefficient of x^{n+m} accumulates p(n,m) a_n b_m with p(n,m) the Taylor
// coefficients of a rational function R(z0, z1).
USeries general_product(const USeries& f, const USeries& g, const ExprPtr& R);

// Bivariate certificate: a two-variable rational function whose diagonal is the
// given algebraic branch. P(x, f(x)) must vanish with f(0) = 0; when the naive
// construction degenerates at the origin the branch is shifted by its first two
// terms first.
ExprPtr furstenberg_bivariate(const BivarPoly& P, const USeries& seed, int verify_trunc = 8);

// One binomial factor C(top_n*n + top_k*k, bot_n*n + bot_k*k)^pow of a depth-1
// nested binomial sum.
struct BinomFactor {
    long top_n = 0, top_k = 0;
    long bot_n = 0, bot_k = 0;
    int pow = 1;
};

struct BinomSumSpec {
    int depth = 1;
    std::vector<BinomFactor> factors;
    Rat prefactor_c = 1;  // c^{a n + b k}
    long prefactor_a = 0;
    long prefactor_b = 0;
    bool sign_k = false;  // (-1)^k
    // k ranges over 0..floor(n/range_div); range_div == 1 means 0..n and
    // range_div == 0 means there is no inner summation at all.
    int range_div = 1;
};

struct DiagonalCertificate {
    ExprPtr expr;
    int nvars = 0;
    USeries matched;  // diagonal of expr, equal to the target sum
};

// Direct evaluation of the sum the spec describes (the verification oracle).
Rat binom_sum_term(const BinomSumSpec& spec, long n);

// Residue construction: each binomial becomes a contour factor
// (1+z)^top / z^bot; the geometric tail in k leaves the two denominators
//   D_A = 1 - c^a z0 prod_i (1+z_i)^{alpha_i} z_i^{1-gamma_i}        (n-tail; carries z0*prod z_i)
//   D_B = 1 - sign c^{a r + b} z0^r prod_i (1+z_i)^{r alpha_i + beta_i} z_i^{r(1-gamma_i)-delta_i}
// and the certificate is 1/(D_A D_B), verified against the direct sum.
DiagonalCertificate binom_sum_to_rational(const BinomSumSpec& spec, int verify_trunc = 8);

// Series of Phi_D^(n)(w) up to w^trunc, computed as the diagonal of the
// two-variable algebraic kernel built from the Chebyshev polynomial T_{n-1},
// with the square-root weight folded into the diagonal extraction.
USeries phi_d_diagonal(int n, int trunc);

}  // namespace diagon

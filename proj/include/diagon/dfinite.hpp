#pragma once

#include <optional>
#include <vector>

#include "diagon/laurent.hpp"
#include "diagon/ratfunc.hpp"
#include "diagon/upoly.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Linear differential operator sum_k p_k(x) D^k with polynomial coefficients.
// Stored as given; content removed by normalized() is kept in `content` for
// reproducibility.
struct LinDiffOp {
    std::vector<UPoly> p;  // p[k] multiplies D^k
    UPoly content = UPoly(Rat(1));

    LinDiffOp() = default;
    explicit LinDiffOp(std::vector<UPoly> coeffs) : p(std::move(coeffs)) { trim(); }

    int order() const { return static_cast<int>(p.size()) - 1; }
    void trim() {
        while (!p.empty() && p.back().is_zero()) p.pop_back();
    }
    bool operator==(const LinDiffOp& o) const { return p == o.p; }

    // divide by the polynomial gcd of the coefficients, make the leading
    // coefficient's leading term positive
    LinDiffOp normalized() const;

    std::string str() const;        // D-form
    std::string str_theta() const;  // theta-form, the canonical display for MUM inputs
};

// x^shift * L = sum_j x^j Q_j(theta); Q[j] is a polynomial in theta.
struct ThetaForm {
    int shift = 0;
    std::vector<UPoly> Q;
    LinDiffOp to_op() const;  // converts back, dividing x^shift out
};

ThetaForm theta_form(const LinDiffOp& L);
// build an operator from theta-form data x^j Q_j(theta), j = 0..
LinDiffOp op_from_theta(const std::vector<UPoly>& Q);
LinDiffOp operator+(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp operator-(const LinDiffOp& a, const LinDiffOp& b);
LinDiffOp operator*(const LinDiffOp& a, const LinDiffOp& b);  // composition a ∘ b
LinDiffOp op_mul_poly(const LinDiffOp& a, const UPoly& f);    // a ∘ (f ·)
LinDiffOp poly_mul_op(const UPoly& f, const LinDiffOp& a);    // (f ·) ∘ a

USeries apply_op(const LinDiffOp& L, const USeries& f);
LSeries apply_op(const LinDiffOp& L, const LSeries& f);
RatFunc apply_op(const LinDiffOp& L, const RatFunc& f);

// Unique truncated analytic solution with the given leading coefficients; a
// resonance without a consistent choice is reported with its index.
USeries series_solution(const LinDiffOp& L, const std::vector<Rat>& init, int trunc);

// Annihilator of pFq(upper; lower; scale*x) in theta-form converted to D-form.
LinDiffOp hypergeometric_op(const std::vector<Rat>& upper, const std::vector<Rat>& lower,
                            const Rat& scale);
USeries pfq_series(const std::vector<Rat>& upper, const std::vector<Rat>& lower, const Rat& scale,
                   int trunc);
// Annihilator of HeunG(a, q, alpha, beta, gamma, delta; scale*x), normalised to
// value 1 at the origin.
LinDiffOp heun_op(const Rat& a, const Rat& q, const Rat& alpha, const Rat& beta, const Rat& gamma,
                  const Rat& delta, const Rat& scale);
USeries heun_series(const Rat& a, const Rat& q, const Rat& alpha, const Rat& beta, const Rat& gamma,
                    const Rat& delta, const Rat& scale, int trunc);

struct GuessReport {
    std::optional<LinDiffOp> op;
    int order = 0, degree = 0;
    int terms_consumed = 0;
    int guard_verified = 0;
};

// Minimal (order, then degree) operator annihilating f through its window,
// verified on guard extra terms; candidates that fail the guard are discarded.
GuessReport guess_ode(const USeries& f, int max_order, int max_degree, int guard);

LinDiffOp adjoint(const LinDiffOp& L);

// Minimal operator annihilating the 2x2 Wronskians (resp. pairwise products)
// of a fundamental system, by closing the wedge (resp. symmetric) module under
// differentiation with reduction by L. `seed` drives the randomized fallback
// vector used if the canonical generator degenerates.
LinDiffOp exterior_square(const LinDiffOp& L, unsigned seed = 0);
LinDiffOp symmetric_square(const LinDiffOp& L, unsigned seed = 0);

// Operator with solutions y(p(x)) for nonconstant rational p.
LinDiffOp pullback_op(const LinDiffOp& L, const RatFunc& p);
// Operator with solutions rho(x) y(x) where rho'/rho = r is rational.
LinDiffOp conjugate_op(const LinDiffOp& L, const RatFunc& r);

// Guessed annihilator of the Hadamard product of the two analytic solutions
// normalised to 1 at the origin.
GuessReport hadamard_op(const LinDiffOp& L1, const LinDiffOp& L2, int max_order, int max_degree,
                        int terms, int guard = 10);

struct Indicial {
    std::vector<std::pair<Rat, int>> exponents;  // rational roots with multiplicity
    UPoly nonrational;                           // leftover factor, constant iff none
};
Indicial indicial_exponents(const LinDiffOp& L);
bool is_mum(const LinDiffOp& L);

bool check_rational_solution(const LinDiffOp& L, const RatFunc& candidate);
// Denominators divide (squarefree part of the leading coefficient)^power_bound;
// numerator degree bounded by degree_bound.
std::vector<RatFunc> bounded_rational_solutions(const LinDiffOp& L, int degree_bound,
                                                int power_bound = 2);

// r = rho'/rho with adjoint(L) = rho L rho^{-1}, when L is conjugate to its
// adjoint by a function; exact decision for order >= 1.
std::optional<RatFunc> conjugate_to_adjoint_witness(const LinDiffOp& L);

}  // namespace diagon

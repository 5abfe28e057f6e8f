#pragma once

#include <optional>

#include "diagon/bivar.hpp"
#include "diagon/dfinite.hpp"
#include "diagon/integrality.hpp"
#include "diagon/laurent.hpp"

namespace diagon {

// Frobenius log-ladder y_k = sum_{j<=k} t_j log(x)^{k-j}/(k-j)! of an operator
// whose indicial roots at 0 are nonnegative integers admitting a full ladder
// over a one-dimensional log-free solution space. For MUM operators t_0(0)=1
// and t_j(0)=0; in general t_0 is monic at its leading exponent and each t_j
// vanishes there.
struct MumBasis {
    int order = 0;
    int lead_exponent = 0;     // leading exponent of t_0
    std::vector<USeries> t;    // t[0] = y0, t[k] = y~_k
    int trunc = 0;
};

MumBasis frobenius_mum_basis(const LinDiffOp& L, int trunc);

// dimension of the space of log-free power series solutions at the origin
int log_free_solution_dim(const LinDiffOp& L, int trunc);

// Wronskian-style determinants W_1..W_n built from y_0..y_{n-1}; the log terms
// cancel identically (asserted) leaving Laurent series with the leading
// x-powers recorded as offsets.
struct WLadder {
    std::vector<LSeries> W;  // W[m-1] = W_m
};
WLadder wronskian_ladder(const LinDiffOp& L, const MumBasis& basis);

// q(x) = x exp(t1/t0)
USeries nome(const LinDiffOp& L, int trunc);
// compositional inverse x(q)
USeries mirror_map(const LinDiffOp& L, int trunc);

struct Yukawa {
    LSeries K_x;  // W1^3 W3 / W2^3 as a function of x
    LSeries K_q;  // the same after composing with the mirror map
};
// computed both from the determinant ratio and from (q d/dq)^2 (y2/y0); the
// two routes are asserted equal
Yukawa yukawa(const LinDiffOp& L, int trunc);

// The Yukawa coupling of the formal adjoint (in the adjoint's own nome).
LSeries adjoint_yukawa(const LinDiffOp& L, int trunc);
// W1 W3^3/(W4 W2^3) on the operator's own ladder and nome; agrees with
// adjoint_yukawa exactly when the operator is conjugate to its adjoint by a
// function.
LSeries wronskian_ratio_kstar(const LinDiffOp& L, int trunc);

// K_m = W1^{m(m-2)} W_m / W2^{m(m-1)/2} for 3 <= m <= order, as q-series
std::vector<LSeries> kn_invariants(const LinDiffOp& L, int trunc);

struct CYReport {
    bool mum = false;
    int ext2_order = 0;
    std::optional<RatFunc> ext2_rational_solution;
    std::optional<RatFunc> adjoint_witness;  // rho'/rho
    IntegralityVerdict y0_verdict;
    IntegralityVerdict nome_verdict;
    bool y0_bounded = false, nome_bounded = false;
    bool calabi_yau = false;  // MUM, order 4, exterior square of order five
    std::string describe() const;
};
CYReport calabi_yau_report(const LinDiffOp& L, int window = 60);

// Schwarzian derivative {p, x} = p'''/p' - (3/2)(p''/p')^2
RatFunc schwarzian(const RatFunc& p);
LSeries schwarzian(const LSeries& p);

// default weight for the [1/3,2/3],[1] family
RatFunc schwarzian_weight13();
// checks {p1,x} + W(p1) p1'^2 == {p2,x} + W(p2) p2'^2 exactly
bool schwarzian_pair_check(const RatFunc& p1, const RatFunc& p2, const RatFunc& W);
// series variant for algebraic pullbacks, compared through x^trunc
bool schwarzian_pair_check(const LSeries& p1, const LSeries& p2, const RatFunc& W, int trunc);

// Phi(u(x), v(x)) identically zero; exact for rational inputs
bool modular_curve_check(const BivarPoly& Phi, const RatFunc& u, const RatFunc& v);
// series variant; requires at least 3*deg(Phi) matched terms beyond the degree
bool modular_curve_check(const BivarPoly& Phi, const USeries& u, const USeries& v);

// One side of a series identity: coeff * prod poly_i^{e_i} * F(pullback) with F
// a pFq or HeunG factor (or nothing).
struct IdentityTerm {
    Rat coeff = 1;
    std::vector<std::pair<UPoly, Rat>> prefactors;
    enum class Kind { None, Hyp, Heun } kind = Kind::None;
    std::vector<Rat> upper, lower;              // Hyp
    Rat ha, hq, halpha, hbeta, hgamma, hdelta;  // Heun
    RatFunc pullback = RatFunc(Rat(0));         // argument, must vanish at 0
    long power = 1;                             // F(pullback)^power
};

USeries identity_term_series(const IdentityTerm& term, int trunc);
bool identity_check(const std::vector<IdentityTerm>& lhs, const std::vector<IdentityTerm>& rhs,
                    int trunc);

}  // namespace diagon

#pragma once

#include "diagon/dfinite.hpp"
#include "diagon/diagonal.hpp"

namespace diagon {
namespace catalog {

// Order-two operators of the weight-one modular forms attached to the
// genus-zero groups Gamma_0(n), normalised so the analytic solution has
// integer coefficients (Maier's operators after rescaling). n = 2, 3, 4 are
// plain hypergeometric; n = 5..9 are built from the Golyshev-Stienstra
// Heun-type operators by the modular pullback and conjugation.
LinDiffOp omega(int n);

// Hadamard product operator of omega(m) and omega(n), found by guessing on the
// product series and guard-verified.
LinDiffOp hadamard_omega(int m, int n);

// printed forms used as cross-checks of the guessed products
LinDiffOp h22_printed();
LinDiffOp h23_printed();

// Batyrev - van Straten Calabi-Yau operators
LinDiffOp batyrev_b1();
LinDiffOp batyrev_b2();
// operator non-trivially homomorphic to b2 (order-one intertwiner x(2 theta+1))
LinDiffOp batyrev_b2_twisted();

// Saalschutzian one-parameter families
LinDiffOp saal_m4(const Rat& mu);
LinDiffOp saal_c(const Rat& mu);
LinDiffOp saal_c_odd(const Rat& mu);

// theta^2 - x(7 theta^2+7 theta+2) - 8x^2 (theta+1)^2, the (self-adjoint after
// multiplying by x) annihilator of sum_k C(n,k)^3 x^n
LinDiffOp heun_cube_sum();      // = x * Omega, exactly self-adjoint
// diamond lattice Heun operator theta^2 - 2x(10 theta^2+5 theta+1) + 16x^2(2 theta+1)^2
LinDiffOp heun_diamond();
// fcc lattice Heun operator theta^2 - 2x theta(4 theta+1) - 24x^2(2 theta+1)(theta+1)
LinDiffOp heun_fcc();

// binomial-sum specifications
BinomSumSpec apery_spec();     // sum C(n,k)^2 C(n+k,k)^2
BinomSumSpec zagier_a_spec();  // sum C(n,k)^3
BinomSumSpec zagier_e_spec();  // sum 4^{n-2k} C(n,2k) C(2k,k)^2
BinomSumSpec zagier_b_spec();  // sum (-1)^k 3^{n-3k} C(n,3k) C(3k,k) C(2k,k)
BinomSumSpec central_binom_spec(int s);  // sum C(sn, n)

// printed multi-variable diagonal representations of the Apery series
std::string apery_rform();      // 5 variables
std::string apery_qform();      // 5 variables
std::string apery_pform();      // 6 variables
std::string apery_delaygue8();  // 8 variables
std::string apery_q6form();     // 6 variables

}  // namespace catalog
}  // namespace diagon

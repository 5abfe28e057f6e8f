#include "diagon/catalog.hpp"

namespace diagon {
namespace catalog {

namespace {

UPoly tp(std::vector<Rat> c) { return UPoly(std::move(c)); }  // polynomial in theta

// (a theta + b)
UPoly lt(const Rat& a, const Rat& b) { return tp({b, a}); }

struct GolyshevData {
    LinDiffOp H;   // second-order seed operator
    UPoly P;       // c(x) = x / P(x), rho(x) = P(x)^{1/k}
    long root;     // k
    long scale;    // a_n
};

GolyshevData golyshev(int n) {
    auto D2 = [](UPoly p2, UPoly p1, UPoly p0) {
        return LinDiffOp({std::move(p0), std::move(p1), std::move(p2)});
    };
    switch (n) {
        case 5:
            // D^2 + (1-66x-32x^2)/((1-44x-16x^2)x) D - 3(x+1)/((1-44x-16x^2)x)
            return GolyshevData{
                D2(UPoly({Rat(0), Rat(1), Rat(-44), Rat(-16)}), UPoly({Rat(1), Rat(-66), Rat(-32)}),
                   UPoly({Rat(-3), Rat(-3)})),
                UPoly({Rat(125), Rat(22), Rat(1)}), 4, 500};
        case 6:
            return GolyshevData{
                D2(UPoly({Rat(0), Rat(4), Rat(-136), Rat(4)}), UPoly({Rat(4), Rat(-204), Rat(8)}),
                   UPoly({Rat(-10), Rat(1)})),
                UPoly({Rat(72), Rat(17), Rat(1)}), 2, 72};
        case 7:
            return GolyshevData{
                D2(UPoly({Rat(0), Rat(1), Rat(-26), Rat(-27)}), UPoly({Rat(1), Rat(-39), Rat(-54)}),
                   UPoly({Rat(-2), Rat(-6)})),
                UPoly({Rat(49), Rat(13), Rat(1)}), 3, 441};
        case 8:
            return GolyshevData{
                D2(UPoly({Rat(0), Rat(1), Rat(-24), Rat(16)}), UPoly({Rat(1), Rat(-36), Rat(32)}),
                   UPoly({Rat(-2), Rat(4)})),
                UPoly({Rat(32), Rat(12), Rat(1)}), 2, 32};
        case 9:
            return GolyshevData{
                D2(UPoly({Rat(0), Rat(4), Rat(-72), Rat(-108)}), UPoly({Rat(4), Rat(-108), Rat(-216)}),
                   UPoly({Rat(-6), Rat(-27)})),
                UPoly({Rat(27), Rat(9), Rat(1)}), 2, 27};
        default: throw domain_error("golyshev: unsupported index");
    }
}

}  // namespace

LinDiffOp omega(int n) {
    switch (n) {
        case 2: return hypergeometric_op({Rat(1, 4), Rat(1, 4)}, {Rat(1)}, Rat(-64));
        case 3: return hypergeometric_op({Rat(1, 3), Rat(1, 3)}, {Rat(1)}, Rat(-27));
        case 4: return hypergeometric_op({Rat(1, 2), Rat(1, 2)}, {Rat(1)}, Rat(-16));
        case 5:
        case 6:
        case 7:
        case 8:
        case 9: {
            GolyshevData g = golyshev(n);
            // P(a x), c(a x) = a x / P(a x)
            UPoly pax;
            {
                std::vector<Rat> c(g.P.coeffs());
                Rat f = 1;
                for (auto& q : c) {
                    q *= f;
                    f *= g.scale;
                }
                pax = UPoly(std::move(c));
            }
            RatFunc cax(UPoly({Rat(0), Rat(g.scale)}), pax);
            LinDiffOp M = pullback_op(g.H, cax);
            // conjugation by rho^{-1} with rho = P(a x)^{1/root}
            RatFunc r = RatFunc(pax.derivative(), pax * Rat(g.root)) * Rat(-1);
            return conjugate_op(M, r).normalized();
        }
        default: throw domain_error("omega: unsupported index");
    }
}

LinDiffOp hadamard_omega(int m, int n) {
    GuessReport rep = hadamard_op(omega(m), omega(n), 6, 14, 150);
    if (!rep.op) throw domain_error("hadamard_omega: guessing failed");
    return *rep.op;
}

LinDiffOp h22_printed() {
    UPoly x = UPoly::x();
    UPoly c(Rat(1));
    UPoly lead({Rat(-1), Rat(4096)});
    return LinDiffOp({UPoly(Rat(16)), UPoly({Rat(-1), Rat(9984)}),
                      UPoly({Rat(0), Rat(-7), Rat(42496)}),
                      UPoly({Rat(0), Rat(0), Rat(-6), Rat(28672)}),
                      (lead * x * x * x)});
}

LinDiffOp h23_printed() {
    UPoly x = UPoly::x();
    UPoly lead({Rat(-1), Rat(1728)});
    return LinDiffOp({UPoly(Rat(12)), UPoly({Rat(-1), Rat(4788)}),
                      UPoly({Rat(0), Rat(-7), Rat(19020)}),
                      UPoly({Rat(0), Rat(0), Rat(-6), Rat(12384)}),
                      (lead * x * x * x)});
}

LinDiffOp batyrev_b1() {
    UPoly q0 = tp({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});  // theta^4
    UPoly q1 = tp({Rat(2), Rat(7), Rat(7)}) * lt(3, 1) * lt(3, 2) * Rat(-3);
    UPoly q2 = lt(3, 5) * lt(3, 4) * lt(3, 2) * lt(3, 1) * Rat(-72);
    return op_from_theta({q0, q1, q2}).normalized();
}

LinDiffOp batyrev_b2() {
    UPoly q0 = tp({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});
    UPoly q1 = tp({Rat(2), Rat(5), Rat(5)}) * lt(2, 1) * lt(2, 1) * Rat(-4);
    UPoly q2 = lt(2, 3) * lt(2, 1) * lt(2, 2) * lt(2, 2) * Rat(64);
    return op_from_theta({q0, q1, q2}).normalized();
}

LinDiffOp batyrev_b2_twisted() {
    UPoly q0 = lt(1, -1) * lt(1, -1) * lt(1, -1) * lt(1, -1);  // (theta-1)^4
    UPoly q1 = lt(2, 1) * lt(2, -1) * tp({Rat(2), Rat(-5), Rat(5)}) * Rat(-4);
    UPoly q2 = tp({Rat(0), Rat(0), Rat(1)}) * lt(2, 3) * lt(2, 1) * Rat(256);
    return op_from_theta({q0, q1, q2}).normalized();
}

LinDiffOp saal_m4(const Rat& mu) {
    UPoly th2 = tp({Rat(0), Rat(0), Rat(1)});
    UPoly q0 = th2 * lt(1, -1) * lt(1, -1) * Rat(16);
    UPoly q1 = lt(2, 1) * lt(2, 1) * lt(2, mu - 1) * lt(2, -mu - 1) * Rat(-1);
    return op_from_theta({q0, q1}).normalized();
}

LinDiffOp saal_c(const Rat& mu) {
    UPoly th2 = tp({Rat(0), Rat(0), Rat(1)});
    UPoly q0 = th2 * lt(1, -1) * lt(1, -1) * Rat(16);
    UPoly q1 =
        lt(2, 1 - mu) * lt(2, 1 + mu) * lt(2, -1 - mu) * lt(2, -1 + mu) * Rat(-1);
    return op_from_theta({q0, q1}).normalized();
}

LinDiffOp saal_c_odd(const Rat& mu) {
    UPoly q0 = tp({Rat(0), Rat(1)}) * lt(1, -1) * lt(1, -1) * lt(1, -2) * Rat(16);
    UPoly q1 = tp({Rat(0), Rat(1)}) * lt(1, -1) * tp({mu * mu, Rat(-4), Rat(4)}) * Rat(-4);
    return op_from_theta({q0, q1}).normalized();
}

LinDiffOp heun_cube_sum() {
    UPoly q0 = tp({Rat(0), Rat(0), Rat(1)});
    UPoly q1 = tp({Rat(2), Rat(7), Rat(7)}) * Rat(-1);
    UPoly q2 = lt(1, 1) * lt(1, 1) * Rat(-8);
    return op_from_theta({q0, q1, q2});
}

LinDiffOp heun_diamond() {
    UPoly q0 = tp({Rat(0), Rat(0), Rat(1)});
    UPoly q1 = tp({Rat(1), Rat(5), Rat(10)}) * Rat(-2);
    UPoly q2 = lt(2, 1) * lt(2, 1) * Rat(16);
    return op_from_theta({q0, q1, q2}).normalized();
}

LinDiffOp heun_fcc() {
    UPoly q0 = tp({Rat(0), Rat(0), Rat(1)});
    UPoly q1 = tp({Rat(0), Rat(1), Rat(4)}) * Rat(-2);
    UPoly q2 = lt(2, 1) * lt(1, 1) * Rat(-24);
    return op_from_theta({q0, q1, q2}).normalized();
}

BinomSumSpec apery_spec() {
    BinomSumSpec s;
    s.factors = {{1, 0, 0, 1, 2}, {1, 1, 0, 1, 2}};
    return s;
}

BinomSumSpec zagier_a_spec() {
    BinomSumSpec s;
    s.factors = {{1, 0, 0, 1, 3}};
    return s;
}

BinomSumSpec zagier_e_spec() {
    BinomSumSpec s;
    s.factors = {{1, 0, 0, 2, 1}, {0, 2, 0, 1, 2}};
    s.prefactor_c = 4;
    s.prefactor_a = 1;
    s.prefactor_b = -2;
    s.range_div = 2;
    return s;
}

BinomSumSpec zagier_b_spec() {
    BinomSumSpec s;
    s.factors = {{1, 0, 0, 3, 1}, {0, 3, 0, 1, 1}, {0, 2, 0, 1, 1}};
    s.prefactor_c = 3;
    s.prefactor_a = 1;
    s.prefactor_b = -3;
    s.sign_k = true;
    s.range_div = 3;
    return s;
}

BinomSumSpec central_binom_spec(int s) {
    BinomSumSpec sp;
    sp.factors = {{s, 0, 1, 0, 1}};
    sp.range_div = 0;
    return sp;
}

std::string apery_rform() {
    return "1/((1-z0)*((1-z1)*(1-z2)*(1-z3)*(1-z4) - z0*z1*z2))";
}

std::string apery_qform() {
    return "1/((1-z1*z2*z3*z4)*((1-z3)*(1-z4) - z0*(1+z1)*(1+z2)))";
}

std::string apery_pform() {
    return "1/((1-z0*z1)*(1-z2-z3-z0*z2*z3)*(1-z4-z5-z1*z4*z5))";
}

std::string apery_delaygue8() {
    return "1/((1-z4*z5*z6*z7)*(1-z0*(1+z4))*(1-z1*(1+z5))*(1-z2-z6)*(1-z3-z7))";
}

std::string apery_q6form() {
    return "1/((1-z0*z3*z4*z5*(1+z1)*(1+z2)^2*(1+z3)*(1+z4)*(1+z5))"
           "*(1-z0*z1*z2*z3*z4*z5*(1+z1)*(1+z2))"
           "*(1-z0*(1+z1)*(1+z2)^2*(1+z3)*(1+z4)*(1+z5)))";
}

}  // namespace catalog
}  // namespace diagon

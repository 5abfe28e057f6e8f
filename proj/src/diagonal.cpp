#include "diagon/diagonal.hpp"

#include <sstream>

namespace diagon {

USeries diagonal(const ExprPtr& expr, int nvars, int trunc) {
    if (nvars < 1) throw domain_error("diagonal: nvars < 1");
    if (expr->max_var() >= nvars) throw domain_error("diagonal: expression uses too many variables");
    MShape shape(nvars, std::vector<int>(nvars, trunc));
    return expand(expr, shape).diagonal(trunc);
}

USeries diagonal(const std::string& expr_text, int nvars, int trunc) {
    return diagonal(parse_expr(expr_text, nvars), nvars, trunc);
}

USeries hadamard(const USeries& f, const USeries& g) {
    int t = std::min(f.trunc(), g.trunc());
    USeries r(t);
    for (int k = 0; k <= t; ++k) r.at(k) = f[k] * g[k];
    return r;
}

USeries hurwitz(const USeries& f, const USeries& g) {
    int t = std::min(f.trunc(), g.trunc());
    USeries r(t);
    for (int n = 0; n <= t; ++n)
        for (int m = 0; n + m <= t; ++m) r.at(n + m) += Rat(binomial(n + m, n)) * f[n] * g[m];
    return r;
}

USeries general_product(const USeries& f, const USeries& g, const ExprPtr& R) {
    int t = std::min(f.trunc(), g.trunc());
    MShape shape(2, {t, t});
    MSeries rs = expand(R, shape);
    USeries r(t);
    for (int n = 0; n <= t; ++n)
        for (int m = 0; n + m <= t; ++m) {
            Expo e{};
            e[0] = n;
            e[1] = m;
            Rat p = rs.coeff(e);
            if (!diagon::is_zero(p)) r.at(n + m) += p * f[n] * g[m];
        }
    return r;
}

namespace {

ExprPtr bivar_to_expr(const BivarPoly& p) {
    ExprPtr sum = nullptr;
    for (const auto& [k, c] : p.terms()) {
        ExprPtr term = RatExpr::make_const(c);
        if (k.first > 0)
            term = RatExpr::node(RatExpr::Kind::Mul, term,
                                 k.first == 1 ? RatExpr::make_var(0)
                                              : RatExpr::make_pow(RatExpr::make_var(0), k.first));
        if (k.second > 0)
            term = RatExpr::node(RatExpr::Kind::Mul, term,
                                 k.second == 1 ? RatExpr::make_var(1)
                                               : RatExpr::make_pow(RatExpr::make_var(1), k.second));
        sum = sum ? RatExpr::node(RatExpr::Kind::Add, sum, term) : term;
    }
    return sum ? sum : RatExpr::make_const(0);
}

}  // namespace

namespace {

// largest power of x dividing every coefficient
int common_x_power(const BivarPoly& p) {
    int a = 1 << 28;
    for (const auto& [k, v] : p.terms()) a = std::min(a, k.first);
    return p.is_zero() ? 0 : a;
}

BivarPoly divide_x_power(const BivarPoly& p, int a) {
    BivarPoly r;
    for (const auto& [k, v] : p.terms()) r = r + BivarPoly::term(k.first - a, k.second, v);
    return r;
}

}  // namespace

ExprPtr furstenberg_bivariate(const BivarPoly& P, const USeries& seed, int verify_trunc) {
    if (seed.trunc() < 2) throw domain_error("furstenberg_bivariate: seed too short");
    if (!diagon::is_zero(seed[0])) throw domain_error("furstenberg_bivariate: seed must vanish at 0");
    if (!P.eval_series(seed).is_zero()) throw domain_error("furstenberg_bivariate: seed is not a root");

    USeries f = bivar_root_series(P, seed, std::max(verify_trunc, seed.trunc()));

    // When P_y(0,0) = 0 other branches also vanish at the origin and the
    // residue extraction picks them all up. Subtracting the first two series
    // terms and rescaling the remainder by x^2 moves the spurious branches
    // away from zero: g = (f - f1 x - f2 x^2)/x^2 is a root of
    // Q = P(x, x^2 y + s)/x^c with Q(0,0) = 0 and Q_y(0,0) != 0.
    UPoly shift;
    int rescale = 0;
    BivarPoly Q = P;
    if (diagon::is_zero(P.dy().eval(0, 0))) {
        shift = UPoly({Rat(0), f[1], f[2]});
        rescale = 2;
        // substitute y -> x^2 y, then y -> y + s(x) in the original order:
        // P(x, x^2 y + s) = (P with y shifted by s) with y -> x^2 y
        BivarPoly shifted = P.subst_y_shift(shift);
        Q = BivarPoly();
        for (const auto& [k, v] : shifted.terms())
            Q = Q + BivarPoly::term(k.first + rescale * k.second, k.second, v);
        Q = divide_x_power(Q, common_x_power(Q));
        if (!diagon::is_zero(Q.eval(0, 0)) || diagon::is_zero(Q.dy().eval(0, 0)))
            throw domain_error(
                "furstenberg_bivariate: branch not separable at origin after shifting");
    }
    BivarPoly num = Q.dy().subst_x_xy() * BivarPoly::term(0, 2, 1);  // y^2 Qy(xy, y)
    BivarPoly den = Q.subst_x_xy();
    // cancel the common monomial so both parts expand at the origin
    int na = 1 << 28, nb = 1 << 28;
    for (const auto& [k, v] : num.terms()) { na = std::min(na, k.first); nb = std::min(nb, k.second); }
    for (const auto& [k, v] : den.terms()) { na = std::min(na, k.first); nb = std::min(nb, k.second); }
    auto strip = [&](const BivarPoly& p) {
        BivarPoly r;
        for (const auto& [k, v] : p.terms())
            r = r + BivarPoly::term(k.first - na, k.second - nb, v);
        return r;
    };
    num = strip(num);
    den = strip(den);
    if (diagon::is_zero(den.coeff(0, 0)))
        throw domain_error("furstenberg_bivariate: branch not separable at origin after shifting");

    ExprPtr expr = RatExpr::node(RatExpr::Kind::Div, bivar_to_expr(num), bivar_to_expr(den));
    ExprPtr xy = RatExpr::node(RatExpr::Kind::Mul, RatExpr::make_var(0), RatExpr::make_var(1));
    if (rescale > 0)
        expr = RatExpr::node(RatExpr::Kind::Mul, expr, RatExpr::make_pow(xy, rescale));
    // fold the shifted terms back in: Diag((z0 z1)^i) = x^i
    for (int i = 1; i <= shift.degree(); ++i) {
        if (diagon::is_zero(shift.coeff(i))) continue;
        ExprPtr mono = RatExpr::node(RatExpr::Kind::Mul, RatExpr::make_const(shift.coeff(i)),
                                     i == 1 ? xy : RatExpr::make_pow(xy, i));
        expr = RatExpr::node(RatExpr::Kind::Add, expr, mono);
    }
    USeries got = diagonal(expr, 2, verify_trunc);
    if (!(got == f.truncated(verify_trunc)))
        throw domain_error("furstenberg_bivariate: certificate verification failed");
    return expr;
}

Rat binom_sum_term(const BinomSumSpec& spec, long n) {
    auto inner = [&](long k) {
        Rat t = pow_rat(spec.prefactor_c, spec.prefactor_a * n + spec.prefactor_b * k);
        if (spec.sign_k && (k & 1)) t = -t;
        for (const auto& fct : spec.factors) {
            Int top(fct.top_n * n + fct.top_k * k), bot(fct.bot_n * n + fct.bot_k * k);
            Int b = binomial(top, bot);
            for (int e = 0; e < fct.pow; ++e) t *= Rat(b);
        }
        return t;
    };
    if (spec.range_div == 0) return inner(0);
    Rat s = 0;
    for (long k = 0; k <= n / spec.range_div; ++k) s += inner(k);
    return s;
}

DiagonalCertificate binom_sum_to_rational(const BinomSumSpec& spec, int verify_trunc) {
    if (spec.depth != 1) throw domain_error("binom_sum_to_rational: only depth 1 implemented");
    long r = spec.range_div;
    if (r < 0) throw domain_error("binom_sum_to_rational: bad range divisor");
    int p = 0;
    for (const auto& f : spec.factors) {
        if (f.pow < 1) throw domain_error("binom_sum_to_rational: bad factor power");
        p += f.pow;
    }
    if (p < 1) throw domain_error("binom_sum_to_rational: no binomial factors");
    int nv = p + 1;
    if (nv > kMaxVars) throw domain_error("binom_sum_to_rational: too many variables");

    // flatten factor powers: one contour variable per binomial occurrence
    struct Flat { long a, b, g, d; };
    std::vector<Flat> fl;
    for (const auto& f : spec.factors)
        for (int e = 0; e < f.pow; ++e) fl.push_back({f.top_n, f.top_k, f.bot_n, f.bot_k});

    // D_A = 1 - c^a z0 prod (1+z_i)^{alpha_i} z_i^{1-gamma_i}
    auto check = [&](long e, const char* what) {
        if (e < 0)
            throw domain_error(std::string("binom_sum_to_rational: spec outside the family (") +
                               what + " exponent negative)");
        return e;
    };
    auto monomial_product = [&](const Rat& c, long z0pow,
                                const std::vector<long>& one_plus_z,
                                const std::vector<long>& z) -> ExprPtr {
        ExprPtr t = is_one(c) ? nullptr : RatExpr::make_const(c);
        auto mul = [&](ExprPtr e) {
            t = t ? RatExpr::node(RatExpr::Kind::Mul, t, e) : e;
        };
        if (z0pow > 0)
            mul(z0pow == 1 ? RatExpr::make_var(0) : RatExpr::make_pow(RatExpr::make_var(0), z0pow));
        for (int i = 0; i < p; ++i) {
            if (one_plus_z[i] > 0) {
                ExprPtr opz = RatExpr::node(RatExpr::Kind::Add, RatExpr::make_const(1),
                                            RatExpr::make_var(i + 1));
                mul(one_plus_z[i] == 1 ? opz : RatExpr::make_pow(opz, one_plus_z[i]));
            }
            if (z[i] > 0)
                mul(z[i] == 1 ? RatExpr::make_var(i + 1)
                              : RatExpr::make_pow(RatExpr::make_var(i + 1), z[i]));
        }
        return t ? t : RatExpr::make_const(1);
    };

    std::vector<long> opzA(p), zA(p);
    for (int i = 0; i < p; ++i) {
        opzA[i] = check(fl[i].a, "D_A binomial top");
        zA[i] = check(1 - fl[i].g, "D_A z");
    }
    ExprPtr DA = RatExpr::node(RatExpr::Kind::Sub, RatExpr::make_const(1),
                               monomial_product(pow_rat(spec.prefactor_c, spec.prefactor_a), 1, opzA, zA));
    ExprPtr den = DA;
    if (r >= 1) {
        std::vector<long> opzB(p), zB(p);
        for (int i = 0; i < p; ++i) {
            opzB[i] = check(r * fl[i].a + fl[i].b, "D_B binomial top");
            zB[i] = check(r * (1 - fl[i].g) - fl[i].d, "D_B z");
        }
        Rat cB = pow_rat(spec.prefactor_c, spec.prefactor_a * r + spec.prefactor_b);
        if (spec.sign_k) cB = -cB;
        ExprPtr DB = RatExpr::node(RatExpr::Kind::Sub, RatExpr::make_const(1),
                                   monomial_product(cB, r, opzB, zB));
        den = RatExpr::node(RatExpr::Kind::Mul, DA, DB);
    }
    ExprPtr expr = RatExpr::node(RatExpr::Kind::Div, RatExpr::make_const(1), den);

    USeries got = diagonal(expr, nv, verify_trunc);
    for (long n = 0; n <= verify_trunc; ++n)
        if (!(got[n] == binom_sum_term(spec, n)))
            throw domain_error("binom_sum_to_rational: verification mismatch at term " +
                               std::to_string(n));
    return DiagonalCertificate{expr, nv, got};
}

namespace {

// t * T_{n-1}(1/t) as Laurent exponents: sum c_k t^{1-k}
std::vector<std::pair<int, Rat>> chebyshev_t_laurent(int n) {
    // T_0 = 1, T_1 = u, T_{m+1} = 2u T_m - T_{m-1}
    std::vector<std::vector<Rat>> T(n);
    T[0] = {Rat(1)};
    if (n > 1) T[1] = {Rat(0), Rat(1)};
    for (int m = 2; m < n; ++m) {
        T[m].assign(m + 1, Rat(0));
        for (std::size_t k = 0; k < T[m - 1].size(); ++k) T[m][k + 1] += 2 * T[m - 1][k];
        for (std::size_t k = 0; k < T[m - 2].size(); ++k) T[m][k] -= T[m - 2][k];
    }
    std::vector<std::pair<int, Rat>> out;
    for (std::size_t k = 0; k < T[n - 1].size(); ++k)
        if (!diagon::is_zero(T[n - 1][k])) out.emplace_back(1 - static_cast<int>(k), T[n - 1][k]);
    return out;
}

}  // namespace

USeries phi_d_diagonal(int n, int trunc) {
    if (n < 2) throw domain_error("phi_d_diagonal: n >= 2 required");
    int tmax = trunc;
    int tlow = std::min(0, (2 - n) * trunc);
    MShape sh(2, {trunc, tmax}, 1, tlow);

    auto W = MSeries::variable(sh, 0);
    auto one = MSeries::constant(sh, 1);

    // F = 1 - 2w + sqrt((1-2w)^2 - 4 w^2 t^2)
    Expo e{};
    e[0] = 2;
    e[1] = 2;
    MSeries w2t2 = MSeries::monomial(sh, e, 4);
    MSeries a1 = one - W * Rat(2);
    MSeries F = a1 + (a1 * a1 - w2t2).sqrt();

    // A = 1 - 2w * (t T_{n-1}(1/t));  G = A + sqrt(A^2 - 4 w^2 t^2)
    MSeries TL(sh);
    for (const auto& [te, c] : chebyshev_t_laurent(n)) {
        Expo et{};
        et[0] = 1;
        et[1] = te;
        TL = TL + MSeries::monomial(sh, et, c * Rat(-2));
    }
    MSeries A = one + TL;
    MSeries G = A + (A * A - w2t2).sqrt();

    // H = G F^{n-1} / (G F^{n-1} - (2wt)^n)
    MSeries GF = G * F.pow_int(n - 1);
    Expo en{};
    en[0] = n;
    en[1] = n;
    MSeries H = GF * (GF - MSeries::monomial(sh, en, pow_rat(2, n))).invert();

    // diagonal against the weight 1/sqrt(1-t^2) = sum_j C(2j,j)/4^j t^{2j}
    std::vector<Rat> wgt(trunc * std::max(1, n - 1) / 2 + 2, Rat(0));
    for (std::size_t j = 0; j < wgt.size(); ++j)
        wgt[j] = Rat(binomial(2 * static_cast<long>(j), static_cast<long>(j))) / pow_rat(4, j);

    USeries out(trunc);
    for (int m = 0; m <= trunc; ++m) {
        Rat s = 0;
        for (int j = 0; m - 2 * j >= tlow; ++j) {
            Expo em{};
            em[0] = m;
            em[1] = m - 2 * j;
            Rat h = H.coeff(em);
            if (!diagon::is_zero(h)) s += h * wgt[j];
        }
        out.at(m) = s;
    }
    Rat fact(factorial(n));
    out = out * (2 / fact);
    out.at(0) -= 1 / fact;
    return out;
}

}  // namespace diagon

#include "diagon/modularity.hpp"

#include <algorithm>
#include <sstream>

namespace diagon {

namespace {

// affine forms c0 + sum c_i * param_i used while solving the ladder recurrences
struct Affine {
    std::vector<Rat> c;  // c[0] constant, c[i] coefficient of param i
    explicit Affine(std::size_t np = 0, const Rat& v = Rat(0)) : c(np + 1, Rat(0)) { c[0] = v; }
    bool is_zero() const {
        for (const auto& q : c)
            if (!diagon::is_zero(q)) return false;
        return true;
    }
};

Affine operator+(const Affine& a, const Affine& b) {
    Affine r(std::max(a.c.size(), b.c.size()) - 1);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] += b.c[i];
    }
    return r;
}

Affine operator*(const Affine& a, const Rat& s) {
    Affine r = a;
    for (auto& q : r.c) q *= s;
    return r;
}

// the ladder solver works in theta-form throughout
struct LadderCtx {
    std::vector<UPoly> Q;            // x^s L = sum x^j Q_j(theta)
    std::vector<std::vector<UPoly>> Qder;  // Qder[i][j] = d^i/dtheta^i Q_j / i!
    std::vector<long> resonances;    // integer m in [0, trunc] with Q_0(m) = 0
    int trunc;

    LadderCtx(const LinDiffOp& L, int T) : trunc(T) {
        ThetaForm tf = theta_form(L);
        Q = tf.Q;
        int order = L.order();
        // Qder[i][j] = (d/dtheta)^i Q_j / i!
        Qder.assign(order + 1, Q);
        for (int i = 1; i <= order; ++i)
            for (std::size_t j = 0; j < Q.size(); ++j)
                Qder[i][j] = Qder[i - 1][j].derivative() * Rat(1, i);
        for (long m = 0; m <= T; ++m)
            if (diagon::is_zero(Q[0].eval(Rat(m)))) resonances.push_back(m);
    }

    // coefficient of x^m in L^{(i)}/i! applied to a concrete series t
    Rat rhs_term(int i, const USeries& t, long m) const {
        Rat s = 0;
        for (std::size_t j = 0; j < Q.size() && static_cast<long>(j) <= m; ++j) {
            const UPoly& q = Qder[i][j];
            if (q.is_zero()) continue;
            const Rat& a = t[m - static_cast<long>(j)];
            if (diagon::is_zero(a)) continue;
            s += q.eval(Rat(m - static_cast<long>(j))) * a;
        }
        return s;
    }

    // solve L(t) = g coefficientwise with parameters at resonances; returns the
    // affine coefficient table and the constraint rows (affine forms == 0)
    void solve(const USeries& g, std::vector<Affine>& a, std::vector<Affine>& constraints) const {
        std::size_t np = resonances.size();
        a.assign(trunc + 1, Affine(np));
        std::size_t next_param = 0;
        for (long m = 0; m <= trunc; ++m) {
            Affine rhs(np, g[m]);
            for (std::size_t j = 1; j < Q.size() && static_cast<long>(j) <= m; ++j) {
                Rat qv = Q[j].eval(Rat(m - static_cast<long>(j)));
                if (diagon::is_zero(qv)) continue;
                rhs = rhs + a[m - j] * (-qv);
            }
            Rat q0 = Q[0].eval(Rat(m));
            if (!diagon::is_zero(q0)) {
                a[m] = rhs * (1 / q0);
            } else {
                constraints.push_back(rhs * Rat(-1));
                a[m] = Affine(np);
                a[m].c[1 + next_param] = 1;
                ++next_param;
            }
        }
    }
};

// solve the affine constraint system; returns particular values + kernel basis
// over the parameters
struct ParamSolution {
    std::vector<Rat> particular;
    std::vector<std::vector<Rat>> kernel;
};

std::optional<ParamSolution> solve_constraints(const std::vector<Affine>& constraints,
                                               std::size_t np) {
    std::vector<std::vector<Rat>> M;  // rows: [p1..pnp | -const]
    for (const auto& cc : constraints) {
        std::vector<Rat> row(np + 1, Rat(0));
        bool nz = false;
        for (std::size_t i = 0; i < np; ++i) {
            row[i] = i + 1 < cc.c.size() ? cc.c[i + 1] : Rat(0);
            nz = nz || !diagon::is_zero(row[i]);
        }
        row[np] = -cc.c[0];
        if (!nz && !diagon::is_zero(row[np])) return std::nullopt;  // inconsistent
        if (nz || !diagon::is_zero(row[np])) M.push_back(std::move(row));
    }
    std::vector<long> pivot_of_col(np, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < np && rank < M.size(); ++col) {
        std::size_t sel = rank;
        while (sel < M.size() && diagon::is_zero(M[sel][col])) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[rank], M[sel]);
        Rat inv = 1 / M[rank][col];
        for (std::size_t j = col; j <= np; ++j) M[rank][j] *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == rank || diagon::is_zero(M[i][col])) continue;
            Rat f = M[i][col];
            for (std::size_t j = col; j <= np; ++j) M[i][j] -= f * M[rank][j];
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    // rows beyond rank must be all-zero
    for (std::size_t i = rank; i < M.size(); ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < np; ++j) nz = nz || !diagon::is_zero(M[i][j]);
        if (!nz && !diagon::is_zero(M[i][np])) return std::nullopt;
    }
    ParamSolution out;
    out.particular.assign(np, Rat(0));
    for (std::size_t c = 0; c < np; ++c)
        if (pivot_of_col[c] >= 0) out.particular[c] = M[static_cast<std::size_t>(pivot_of_col[c])][np];
    for (std::size_t c = 0; c < np; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<Rat> v(np, Rat(0));
        v[c] = 1;
        for (std::size_t c2 = 0; c2 < c; ++c2)
            if (pivot_of_col[c2] >= 0)
                v[c2] = -M[static_cast<std::size_t>(pivot_of_col[c2])][c];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

USeries substitute(const std::vector<Affine>& a, const std::vector<Rat>& params, int trunc) {
    USeries s(trunc);
    for (int m = 0; m <= trunc; ++m) {
        Rat v = a[m].c[0];
        for (std::size_t i = 0; i < params.size(); ++i)
            if (i + 1 < a[m].c.size()) v += a[m].c[i + 1] * params[i];
        s.at(m) = v;
    }
    return s;
}

}  // namespace

int log_free_solution_dim(const LinDiffOp& L, int trunc) {
    LadderCtx ctx(L, trunc);
    std::vector<Affine> a, constraints;
    ctx.solve(USeries(trunc), a, constraints);
    auto sol = solve_constraints(constraints, ctx.resonances.size());
    if (!sol) return 0;
    return static_cast<int>(sol->kernel.size());
}

MumBasis frobenius_mum_basis(const LinDiffOp& L_in, int trunc) {
    int n = L_in.order();
    // negative integer exponents are shifted away by conjugating with a power
    // of x; the nome and the Yukawa-type invariants do not feel this
    LinDiffOp L = L_in;
    {
        Indicial ind = indicial_exponents(L_in);
        long rmin = 0;
        for (const auto& [r, m] : ind.exponents)
            if (denominator(r) == 1 && numerator(r) < rmin) rmin = numerator(r).get_si();
        if (rmin < 0)
            L = conjugate_op(L_in, RatFunc(UPoly(Rat(-rmin)), UPoly::x()));
    }
    LadderCtx ctx(L, trunc);
    if (static_cast<long>(ctx.resonances.size()) > 4 * n)
        throw domain_error("frobenius_mum_basis: indicial structure out of scope");

    MumBasis basis;
    basis.order = n;
    basis.trunc = trunc;

    // t_0: the log-free solution, required one-dimensional
    std::vector<Affine> a0, cons0;
    ctx.solve(USeries(trunc), a0, cons0);
    auto sol0 = solve_constraints(cons0, ctx.resonances.size());
    if (!sol0 || sol0->kernel.size() == 0)
        throw domain_error("frobenius_mum_basis: no log-free solution");
    if (sol0->kernel.size() > 1)
        throw domain_error("frobenius_mum_basis: log-free solution space not one-dimensional");
    std::vector<Rat> params = sol0->particular;
    for (std::size_t i = 0; i < params.size(); ++i) params[i] += sol0->kernel[0][i];
    USeries t0 = substitute(a0, params, trunc);
    int r0 = t0.order();
    if (r0 > trunc) throw domain_error("frobenius_mum_basis: zero solution");
    t0 = t0 * (1 / t0[r0]);
    basis.lead_exponent = r0;
    basis.t.push_back(t0);

    // kernel direction as a series, for normalising the higher rungs
    for (int k = 1; k < n; ++k) {
        // rhs g = -sum_{i=1..k} L^{(i)}/i! (t_{k-i})
        USeries g(trunc);
        for (int i = 1; i <= k; ++i) {
            const USeries& ti = basis.t[k - i];
            for (long m = 0; m <= trunc; ++m) g.at(m) -= ctx.rhs_term(i, ti, m);
        }
        std::vector<Affine> ak, consk;
        ctx.solve(g, ak, consk);
        auto solk = solve_constraints(consk, ctx.resonances.size());
        if (!solk)
            throw domain_error("frobenius_mum_basis: ladder rung " + std::to_string(k) +
                               " does not exist (operator without full log ladder)");
        USeries tk = substitute(ak, solk->particular, trunc);
        // normalise: zero coefficient at t_0's leading exponent by adding the
        // right multiple of t_0 (the only remaining freedom)
        tk = tk - t0 * tk[r0];
        basis.t.push_back(tk);
    }
    return basis;
}

namespace {

// series with log grading: coefficient of log(x)^a / a!
struct LogVec {
    std::vector<LSeries> u;
    int grades() const { return static_cast<int>(u.size()); }
};

LogVec logvec_mul(const LogVec& a, const LogVec& b, int maxg) {
    LogVec r;
    r.u.assign(std::min(maxg, a.grades() + b.grades() - 1), LSeries());
    for (int i = 0; i < a.grades(); ++i)
        for (int j = 0; j < b.grades() && i + j < r.grades(); ++j) {
            if (a.u[i].is_zero() || b.u[j].is_zero()) continue;
            Rat c(binomial(i + j, i));
            r.u[i + j] = r.u[i + j] + a.u[i] * b.u[j] * c;
        }
    return r;
}

LogVec logvec_derivative(const LogVec& a) {
    // d/dx (u_a l^a/a!) = u_a' l^a/a! + u_{a+1} l^a/a! * (1/x)
    LogVec r;
    r.u.assign(a.grades(), LSeries());
    for (int g = 0; g < a.grades(); ++g) {
        r.u[g] = a.u[g].derivative();
        if (g + 1 < a.grades() && !a.u[g + 1].is_zero()) {
            const LSeries& nxt = a.u[g + 1];
            r.u[g] = r.u[g] + LSeries(nxt.offset() - 1, nxt.unit());
        }
    }
    return r;
}

LSeries logvec_constant_part(const LogVec& a, const char* what) {
    for (int g = 1; g < a.grades(); ++g)
        if (!a.u[g].is_zero())
            throw domain_error(std::string(what) + ": log terms fail to cancel");
    return a.grades() ? a.u[0] : LSeries();
}

LogVec solution_logvec(const MumBasis& basis, int k) {
    // y_k = sum_{j<=k} t_j l^{k-j}/(k-j)!
    LogVec v;
    v.u.assign(k + 1, LSeries());
    for (int j = 0; j <= k; ++j) v.u[k - j] = LSeries::from(basis.t[j]);
    return v;
}

LSeries det_logvec(std::vector<std::vector<LogVec>>& m, int n, int maxg, const char* what) {
    // permutation expansion; n <= 6 in practice
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    bool first = true;
    LogVec det;
    det.u.assign(maxg, LSeries());
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        LogVec prod = m[0][perm[0]];
        for (int i = 1; i < n; ++i) prod = logvec_mul(prod, m[i][perm[i]], maxg);
        if (inv % 2) {
            for (auto& coeff : prod.u) coeff = -coeff;
        }
        if (first) {
            det = prod;
            det.u.resize(maxg);
            first = false;
        } else {
            for (int g = 0; g < maxg; ++g)
                if (g < prod.grades()) det.u[g] = det.u[g] + prod.u[g];
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return logvec_constant_part(det, what);
}

}  // namespace

WLadder wronskian_ladder(const LinDiffOp& L, const MumBasis& basis) {
    if (basis.order != L.order()) throw domain_error("wronskian_ladder: basis/operator mismatch");
    int n = basis.order;
    WLadder out;
    int maxg = n + 1;
    // derivative rows of each solution
    std::vector<std::vector<LogVec>> rows;  // rows[d][k] = d-th derivative of y_k
    rows.push_back({});
    for (int k = 0; k < n; ++k) rows[0].push_back(solution_logvec(basis, k));
    for (int d = 1; d < n; ++d) {
        rows.push_back({});
        for (int k = 0; k < n; ++k) rows[d].push_back(logvec_derivative(rows[d - 1][k]));
    }
    for (int m = 1; m <= n; ++m) {
        std::vector<std::vector<LogVec>> sub(m);
        for (int d = 0; d < m; ++d) {
            sub[d] = {};
            for (int k = 0; k < m; ++k) sub[d].push_back(rows[d][k]);
        }
        out.W.push_back(det_logvec(sub, m, maxg, "wronskian_ladder"));
    }
    return out;
}

USeries nome(const LinDiffOp& L, int trunc) {
    MumBasis b = frobenius_mum_basis(L, trunc + 1);
    LSeries ratio = LSeries::from(b.t[1]) / LSeries::from(b.t[0]);
    if (!ratio.is_zero() && ratio.offset() < 1)
        throw domain_error("nome: t1/t0 does not vanish at the origin");
    USeries r = ratio.to_useries(trunc);
    return (series_exp(r) * USeries::x(trunc)).truncated(trunc);
}

USeries mirror_map(const LinDiffOp& L, int trunc) { return series_reverse(nome(L, trunc)); }

namespace {

LSeries compose_with(const LSeries& f, const USeries& g) {
    // f = x^e u(x); f(g) = g^e * u(g)
    if (!diagon::is_zero(g[0])) throw domain_error("compose_with: inner series must vanish at 0");
    USeries comp = series_compose(f.unit(), g);
    LSeries ge = LSeries::from(g).pow(f.offset());
    return ge * LSeries::from(comp);
}

}  // namespace

Yukawa yukawa(const LinDiffOp& L, int trunc) {
    int pad = trunc + L.order() + 2;
    MumBasis b = frobenius_mum_basis(L, pad);
    if (b.order < 3) throw domain_error("yukawa: operator order must be at least 3");
    WLadder w = wronskian_ladder(L, b);
    LSeries K1 = w.W[0].pow(3) * w.W[2] * (w.W[1].pow(3)).invert();

    // second route: (q d/dq)^2 (y2/y0) = 1 + (1/tau') d/dx ((1/tau') g') with
    // g = t2/t0 - (t1/t0)^2 / 2 and tau' = (t1/t0)' + 1/x
    LSeries t0 = LSeries::from(b.t[0]);
    LSeries rho1 = LSeries::from(b.t[1]) / t0;
    LSeries g = LSeries::from(b.t[2]) / t0 - rho1 * rho1 * Rat(1, 2);
    LSeries taup = rho1.derivative() + LSeries(-1, USeries::constant(1, pad));
    LSeries itaup = taup.invert();
    LSeries K2 = itaup * (itaup * g.derivative()).derivative();
    K2 = K2 + LSeries::constant(1, K2.unit().trunc());

    int cmp = std::min(K1.abs_trunc(), K2.abs_trunc());
    for (int k = std::min(K1.offset(), K2.offset()); k <= cmp; ++k)
        if (!(K1.coeff(k) == K2.coeff(k)))
            throw domain_error("yukawa: determinant and derivative routes disagree");

    // constant normalisation: the leading coefficient is set to 1,
    // so that K starts exactly at 1 for MUM operators
    K1 = K1 * (1 / K1.unit()[0]);
    USeries mm = mirror_map(L, pad);
    Yukawa out;
    out.K_x = K1.truncated_abs(trunc);
    out.K_q = compose_with(K1, mm).truncated_abs(trunc);
    return out;
}

// W1 W3^3 / (W4 W2^3) on the operator's own ladder, composed with its own
// mirror map. Equals the adjoint's Yukawa when the operator is conjugate to
// its adjoint by a function.
LSeries wronskian_ratio_kstar(const LinDiffOp& L, int trunc) {
    int pad = trunc + L.order() + 2;
    MumBasis b = frobenius_mum_basis(L, pad);
    if (b.order != 4) throw domain_error("wronskian_ratio_kstar: order-4 operators only");
    WLadder w = wronskian_ladder(L, b);
    LSeries Ks = w.W[0] * w.W[2].pow(3) * (w.W[3] * w.W[1].pow(3)).invert();
    Ks = Ks * (1 / Ks.unit()[0]);
    USeries mm = mirror_map(L, pad);
    return compose_with(Ks, mm).truncated_abs(trunc);
}

LSeries adjoint_yukawa(const LinDiffOp& L, int trunc) {
    if (L.order() != 4) throw domain_error("adjoint_yukawa: order-4 operators only");
    // the Yukawa coupling of the formal adjoint, in the adjoint's own nome
    return yukawa(adjoint(L), trunc).K_q;
}

std::vector<LSeries> kn_invariants(const LinDiffOp& L, int trunc) {
    int pad = trunc + L.order() + 2;
    MumBasis b = frobenius_mum_basis(L, pad);
    WLadder w = wronskian_ladder(L, b);
    USeries mm = mirror_map(L, pad);
    std::vector<LSeries> out;
    for (int m = 3; m <= b.order; ++m) {
        LSeries K = w.W[0].pow(static_cast<long>(m) * (m - 2)) * w.W[m - 1] *
                    (w.W[1].pow(static_cast<long>(m) * (m - 1) / 2)).invert();
        K = K * (1 / K.unit()[0]);
        out.push_back(compose_with(K, mm).truncated_abs(trunc));
    }
    return out;
}

std::string CYReport::describe() const {
    std::ostringstream os;
    os << "MUM: " << (mum ? "yes" : "no") << "; exterior square order " << ext2_order;
    if (ext2_rational_solution) os << ", rational solution " << ext2_rational_solution->str();
    os << "; conjugate to adjoint: ";
    if (adjoint_witness) os << "yes (rho'/rho = " << adjoint_witness->str() << ")";
    else os << "not found";
    os << "; y0 " << y0_verdict.describe() << "; nome " << nome_verdict.describe();
    os << "; Calabi-Yau condition " << (calabi_yau ? "holds" : "fails");
    return os.str();
}

CYReport calabi_yau_report(const LinDiffOp& L, int window) {
    CYReport rep;
    rep.mum = is_mum(L);
    LinDiffOp e2 = exterior_square(L);
    rep.ext2_order = e2.order();
    auto rs = bounded_rational_solutions(e2, 4, 2);
    if (!rs.empty()) rep.ext2_rational_solution = rs.front();
    rep.adjoint_witness = conjugate_to_adjoint_witness(L);
    try {
        MumBasis b = frobenius_mum_basis(L, window);
        USeries y0 = b.t[0];
        rep.y0_verdict = find_rescaling(y0);
        rep.y0_bounded = rep.y0_verdict.kind == IntegralityKind::GloballyBoundedWith;
        rep.nome_verdict = find_rescaling(nome(L, window));
        rep.nome_bounded = rep.nome_verdict.kind == IntegralityKind::GloballyBoundedWith;
    } catch (const domain_error&) {
        // leave verdicts inconclusive when no ladder exists
    }
    rep.calabi_yau = rep.mum && L.order() == 4 && rep.ext2_order == 5;
    return rep;
}

RatFunc schwarzian(const RatFunc& p) {
    RatFunc p1 = p.derivative();
    RatFunc p2 = p1.derivative();
    RatFunc p3 = p2.derivative();
    RatFunc r = p2 / p1;
    return p3 / p1 - r * r * Rat(3, 2);
}

LSeries schwarzian(const LSeries& p) {
    LSeries p1 = p.derivative();
    LSeries p2 = p1.derivative();
    LSeries p3 = p2.derivative();
    LSeries r = p2 / p1;
    return p3 / p1 - r * r * Rat(3, 2);
}

RatFunc schwarzian_weight13() {
    // (1/18) (8p^2 - 8p + 9) / (p^2 (p-1)^2) evaluated at the pullback
    UPoly num({Rat(9), Rat(-8), Rat(8)});
    UPoly p2 = UPoly::x() * UPoly::x();
    UPoly pm1 = UPoly::x() - UPoly(Rat(1));
    return RatFunc(num * Rat(1, 18), p2 * pm1 * pm1);
}

bool schwarzian_pair_check(const RatFunc& p1, const RatFunc& p2, const RatFunc& W) {
    RatFunc lhs = schwarzian(p1) + W.compose(p1) * p1.derivative() * p1.derivative();
    RatFunc rhs = schwarzian(p2) + W.compose(p2) * p2.derivative() * p2.derivative();
    return (lhs - rhs).is_zero();
}

namespace {

LSeries ratfunc_series_at(const RatFunc& f, const LSeries& p, int trunc) {
    // f(p(x)) for Laurent p with positive order; f rational
    LSeries num, den;
    auto eval_poly = [&](const UPoly& q) {
        LSeries acc = LSeries::constant(q.coeff(q.degree()), trunc);
        for (int k = q.degree() - 1; k >= 0; --k)
            acc = acc * p + LSeries::constant(q.coeff(k), trunc);
        return acc;
    };
    num = eval_poly(f.num());
    den = eval_poly(f.den());
    return num / den;
}

}  // namespace

bool schwarzian_pair_check(const LSeries& p1, const LSeries& p2, const RatFunc& W, int trunc) {
    auto side = [&](const LSeries& p) {
        LSeries d = p.derivative();
        return schwarzian(p) + ratfunc_series_at(W, p, trunc) * d * d;
    };
    LSeries diff = side(p1) - side(p2);
    if (diff.is_zero()) return true;
    for (int k = diff.offset(); k <= std::min(diff.abs_trunc(), trunc); ++k)
        if (!diagon::is_zero(diff.coeff(k))) return false;
    return true;
}

bool modular_curve_check(const BivarPoly& Phi, const RatFunc& u, const RatFunc& v) {
    return Phi.eval_ratfunc(u, v).is_zero();
}

bool modular_curve_check(const BivarPoly& Phi, const USeries& u, const USeries& v) {
    int d = Phi.total_degree();
    int t = std::min(u.trunc(), v.trunc());
    if (t < 4 * d)
        throw domain_error("modular_curve_check: series too short for a safe margin");
    return Phi.eval_series2(u, v).is_zero();
}

USeries identity_term_series(const IdentityTerm& term, int trunc) {
    USeries acc = USeries::constant(term.coeff, trunc);
    for (const auto& [poly, e] : term.prefactors) {
        Rat c0 = poly.coeff(0);
        if (diagon::is_zero(c0)) throw domain_error("identity term: prefactor vanishes at 0");
        USeries base = USeries::from_poly(poly * (1 / c0), trunc);
        long den = denominator(e).get_si();
        LSeries c0pow = LSeries::constant(c0, trunc);
        // c0^e must stay rational
        LSeries root = c0pow.nth_root(den);
        Rat c0root = root.unit()[0];
        Rat scale = pow_rat(c0root, numerator(e).get_si());
        USeries frac = series_pow_rat(base, e);
        acc = acc * frac * scale;
    }
    if (term.kind != IdentityTerm::Kind::None) {
        if (!diagon::is_zero(term.pullback.num().coeff(0)))
            throw domain_error("identity term: pullback must vanish at 0");
        // pullback as a series
        USeries pn = USeries::from_poly(term.pullback.num(), trunc);
        USeries pd = USeries::from_poly(term.pullback.den(), trunc);
        USeries parg = pn * series_invert(pd);
        USeries F(trunc);
        if (term.kind == IdentityTerm::Kind::Hyp)
            F = pfq_series(term.upper, term.lower, 1, trunc);
        else
            F = heun_series(term.ha, term.hq, term.halpha, term.hbeta, term.hgamma, term.hdelta, 1,
                            trunc);
        USeries Fp = series_compose(F, parg);
        long pw = term.power;
        USeries Feff = Fp;
        for (long i = 1; i < pw; ++i) Feff = Feff * Fp;
        acc = acc * Feff;
    }
    return acc;
}

bool identity_check(const std::vector<IdentityTerm>& lhs, const std::vector<IdentityTerm>& rhs,
                    int trunc) {
    USeries l(trunc), r(trunc);
    for (const auto& t : lhs) l = l + identity_term_series(t, trunc);
    for (const auto& t : rhs) r = r + identity_term_series(t, trunc);
    return l == r;
}

}  // namespace diagon

#include "diagon/dfinite.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "diagon/fp.hpp"

namespace diagon {

LinDiffOp LinDiffOp::normalized() const {
    LinDiffOp r = *this;
    r.trim();
    if (r.p.empty()) return r;
    UPoly g;
    for (const auto& q : r.p) g = UPoly::gcd(g, q);
    if (g.degree() > 0) {
        for (auto& q : r.p) q = q.divexact(g);
        r.content = g;
    } else {
        r.content = UPoly(Rat(1));
    }
    // scale so every coefficient is an integer polynomial, jointly primitive,
    // with the leading coefficient's leading term positive
    Int den_lcm = 1, num_gcd = 0;
    for (const auto& q : r.p)
        for (const auto& c : q.coeffs()) {
            if (diagon::is_zero(c)) continue;
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), denominator(c).get_mpz_t());
        }
    for (const auto& q : r.p)
        for (const auto& c : q.coeffs()) {
            if (diagon::is_zero(c)) continue;
            Int n = numerator(c) * (den_lcm / denominator(c));
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
    Rat scale(den_lcm, num_gcd == 0 ? Int(1) : num_gcd);
    scale.canonicalize();
    if (sgn(r.p.back().leading()) < 0) scale = -scale;
    for (auto& q : r.p) q = q * scale;
    r.content = r.content * (1 / scale);
    return r;
}

std::string LinDiffOp::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = order(); k >= 0; --k) {
        if (p[k].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << p[k].str() << ")";
        if (k > 0) os << "*D";
        if (k > 1) os << "^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string LinDiffOp::str_theta() const {
    ThetaForm tf = theta_form(*this);
    std::ostringstream os;
    if (tf.shift != 0) os << "x^" << tf.shift << " * L = ";
    bool first = true;
    for (std::size_t j = 0; j < tf.Q.size(); ++j) {
        if (tf.Q[j].is_zero()) continue;
        if (!first) os << " + ";
        if (j > 0) {
            os << "x";
            if (j > 1) os << "^" << j;
            os << "*";
        }
        os << "(" << tf.Q[j].str("t") << ")";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

ThetaForm theta_form(const LinDiffOp& L) {
    int n = L.order();
    if (n < 0) throw domain_error("theta_form of zero operator");
    // falling factorials ff_k(t) = t (t-1) ... (t-k+1), with x^k D^k = ff_k(theta)
    std::vector<UPoly> ff(n + 1);
    ff[0] = UPoly(Rat(1));
    for (int k = 1; k <= n; ++k)
        ff[k] = ff[k - 1] * (UPoly::x() - UPoly(Rat(k - 1)));
    int maxj = n;
    for (int k = 0; k <= n; ++k) maxj = std::max(maxj, L.p[k].degree() + n - k);
    std::vector<UPoly> Q(maxj + 1);
    for (int k = 0; k <= n; ++k)
        for (int d = 0; d <= L.p[k].degree(); ++d) {
            Rat c = L.p[k].coeff(d);
            if (diagon::is_zero(c)) continue;
            Q[d + n - k] = Q[d + n - k] + ff[k] * c;
        }
    int j0 = 0;
    while (j0 < static_cast<int>(Q.size()) && Q[j0].is_zero()) ++j0;
    if (j0 > 0) Q.erase(Q.begin(), Q.begin() + j0);
    while (!Q.empty() && Q.back().is_zero()) Q.pop_back();
    return ThetaForm{n - j0, std::move(Q)};
}

LinDiffOp operator+(const LinDiffOp& a, const LinDiffOp& b) {
    std::vector<UPoly> p(std::max(a.p.size(), b.p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k < a.p.size()) p[k] = p[k] + a.p[k];
        if (k < b.p.size()) p[k] = p[k] + b.p[k];
    }
    return LinDiffOp(std::move(p));
}

LinDiffOp operator-(const LinDiffOp& a, const LinDiffOp& b) {
    std::vector<UPoly> p(std::max(a.p.size(), b.p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k < a.p.size()) p[k] = p[k] + a.p[k];
        if (k < b.p.size()) p[k] = p[k] - b.p[k];
    }
    return LinDiffOp(std::move(p));
}

LinDiffOp operator*(const LinDiffOp& a, const LinDiffOp& b) {
    // D^i (g .) = sum_t C(i,t) g^{(t)} D^{i-t}
    std::vector<UPoly> p(a.p.size() + b.p.size(), UPoly());
    for (std::size_t i = 0; i < a.p.size(); ++i) {
        if (a.p[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.p.size(); ++j) {
            if (b.p[j].is_zero()) continue;
            UPoly g = b.p[j];
            for (std::size_t t = 0; t <= i; ++t) {
                Rat c(binomial(static_cast<long>(i), static_cast<long>(t)));
                p[i - t + j] = p[i - t + j] + a.p[i] * g * c;
                g = g.derivative();
                if (g.is_zero()) break;
            }
        }
    }
    return LinDiffOp(std::move(p));
}

LinDiffOp op_mul_poly(const LinDiffOp& a, const UPoly& f) {
    LinDiffOp fop(std::vector<UPoly>{f});
    return a * fop;
}

LinDiffOp poly_mul_op(const UPoly& f, const LinDiffOp& a) {
    std::vector<UPoly> p(a.p.size());
    for (std::size_t k = 0; k < a.p.size(); ++k) p[k] = a.p[k] * f;
    return LinDiffOp(std::move(p));
}

LinDiffOp op_from_theta(const std::vector<UPoly>& Q) {
    // theta^m as a D-operator
    int dmax = 0;
    for (const auto& q : Q) dmax = std::max(dmax, q.degree());
    std::vector<LinDiffOp> th(dmax + 1);
    th[0] = LinDiffOp({UPoly(Rat(1))});
    LinDiffOp theta({UPoly(), UPoly::x()});
    for (int m = 1; m <= dmax; ++m) th[m] = theta * th[m - 1];
    LinDiffOp r;
    for (std::size_t j = 0; j < Q.size(); ++j) {
        if (Q[j].is_zero()) continue;
        LinDiffOp qop;
        for (int m = 0; m <= Q[j].degree(); ++m) {
            if (diagon::is_zero(Q[j].coeff(m))) continue;
            LinDiffOp t = th[m];
            for (auto& c : t.p) c = c * Q[j].coeff(m);
            qop = qop + t;
        }
        r = r + poly_mul_op(UPoly::x(static_cast<int>(j)), qop);
    }
    return r;
}

LinDiffOp ThetaForm::to_op() const {
    LinDiffOp L = op_from_theta(Q);
    if (shift == 0) return L;
    if (shift < 0) {
        for (auto& c : L.p) c = c.shift_up(-shift);
        return L;
    }
    // divide the common x^shift out of the coefficients
    std::vector<UPoly> p(L.p.size());
    for (std::size_t k = 0; k < L.p.size(); ++k) {
        if (L.p[k].is_zero()) continue;
        std::vector<Rat> c(L.p[k].coeffs().begin() + shift, L.p[k].coeffs().end());
        for (int i = 0; i < shift && i < static_cast<int>(L.p[k].coeffs().size()); ++i)
            if (!diagon::is_zero(L.p[k].coeff(i)))
                throw domain_error("ThetaForm::to_op: inconsistent shift");
        p[k] = UPoly(std::move(c));
    }
    return LinDiffOp(std::move(p));
}

USeries apply_op(const LinDiffOp& L, const USeries& f) {
    int n = L.order();
    if (n < 0) return USeries(f.trunc());
    int t = f.trunc() - n;
    if (t < 0) throw domain_error("apply_op: series too short");
    USeries acc(t);
    USeries der = f;
    for (int k = 0; k <= n; ++k) {
        if (!L.p[k].is_zero()) acc = acc + der.truncated(t).mul_poly(L.p[k]);
        if (k < n) der = der.derivative();
    }
    return acc;
}

LSeries apply_op(const LinDiffOp& L, const LSeries& f) {
    int n = L.order();
    LSeries acc;
    LSeries der = f;
    for (int k = 0; k <= n; ++k) {
        if (!L.p[k].is_zero()) {
            LSeries term = der * LSeries(0, USeries::from_poly(L.p[k], f.unit().trunc()));
            acc = acc + term;
        }
        if (k < n) der = der.derivative();
    }
    return acc;
}

RatFunc apply_op(const LinDiffOp& L, const RatFunc& f) {
    RatFunc acc(Rat(0));
    RatFunc der = f;
    for (int k = 0; k <= L.order(); ++k) {
        if (!L.p[k].is_zero()) acc = acc + der * RatFunc(L.p[k], UPoly(Rat(1)));
        if (k < L.order()) der = der.derivative();
    }
    return acc;
}

USeries series_solution(const LinDiffOp& L, const std::vector<Rat>& init, int trunc) {
    ThetaForm tf = theta_form(L);
    int J = static_cast<int>(tf.Q.size()) - 1;
    USeries a(trunc);
    int r = static_cast<int>(init.size());
    if (r == 0) throw domain_error("series_solution: empty initial data");
    for (int m = 0; m <= trunc; ++m) {
        Rat rhs = 0;
        for (int j = 1; j <= std::min(J, m); ++j) rhs += tf.Q[j].eval(Rat(m - j)) * a[m - j];
        Rat q0 = tf.Q[0].eval(Rat(m));
        if (m < r) {
            a.at(m) = init[m];
            if (!diagon::is_zero(q0 * a[m] + rhs))
                throw domain_error("series_solution: initial data inconsistent at index " +
                                   std::to_string(m));
        } else if (!diagon::is_zero(q0)) {
            a.at(m) = -rhs / q0;
        } else if (diagon::is_zero(rhs)) {
            a.at(m) = 0;  // resonant but consistent; pick the plain branch
        } else {
            throw domain_error("series_solution: resonance at index " + std::to_string(m));
        }
    }
    return a;
}

LinDiffOp hypergeometric_op(const std::vector<Rat>& upper, const std::vector<Rat>& lower,
                            const Rat& scale) {
    UPoly q0 = UPoly::x();  // theta
    for (const auto& b : lower) q0 = q0 * (UPoly::x() + UPoly(b - 1));
    UPoly q1(Rat(1));
    for (const auto& a : upper) q1 = q1 * (UPoly::x() + UPoly(a));
    q1 = q1 * (-scale);
    return op_from_theta({q0, q1}).normalized();
}

USeries pfq_series(const std::vector<Rat>& upper, const std::vector<Rat>& lower, const Rat& scale,
                   int trunc) {
    USeries s(trunc);
    Rat term = 1;
    s.at(0) = 1;
    for (int m = 0; m < trunc; ++m) {
        Rat num = scale, den = Rat(m + 1);
        for (const auto& a : upper) num *= (a + m);
        for (const auto& b : lower) {
            Rat f = b + m;
            if (diagon::is_zero(f)) throw domain_error("pfq_series: nonpositive integer lower parameter");
            den *= f;
        }
        term = term * num / den;
        s.at(m + 1) = term;
    }
    return s;
}

LinDiffOp heun_op(const Rat& a, const Rat& q, const Rat& alpha, const Rat& beta, const Rat& gamma,
                  const Rat& delta, const Rat& scale) {
    if (diagon::is_zero(a)) throw domain_error("heun_op: parameter a must be nonzero");
    Rat eps = alpha + beta + 1 - gamma - delta;
    UPoly z({Rat(0), scale});  // z = scale * x
    UPoly zm1 = z - UPoly(Rat(1));
    UPoly zma = z - UPoly(a);
    UPoly A = z * zm1 * zma;
    UPoly B = zm1 * zma * gamma + z * zma * delta + z * zm1 * eps;
    UPoly C = z * (alpha * beta) - UPoly(q);
    return LinDiffOp({C * (scale * scale), B * scale, A}).normalized();
}

USeries heun_series(const Rat& a, const Rat& q, const Rat& alpha, const Rat& beta, const Rat& gamma,
                    const Rat& delta, const Rat& scale, int trunc) {
    return series_solution(heun_op(a, q, alpha, beta, gamma, delta, scale), {Rat(1)}, trunc);
}

namespace {

// --- linear algebra over Q(x) ------------------------------------------------

using RVec = std::vector<RatFunc>;

// first linear dependency among the given vectors, as coefficients lambda with
// lambda.back() = 1; empty if independent
std::optional<std::vector<RatFunc>> dependency(const std::vector<RVec>& vecs) {
    if (vecs.empty()) return std::nullopt;
    std::size_t n = vecs[0].size(), m = vecs.size();
    // columns = vectors, rows = coordinates; eliminate
    std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(m, RatFunc(Rat(0))));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) a[i][j] = vecs[j][i];
    std::vector<long> pivot_col_of_row;
    std::vector<long> pivot_row_of_col(m, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t sel = rank;
        while (sel < n && a[sel][col].is_zero()) ++sel;
        if (sel == n) {
            // dependent column: back-substitute to get lambda
            std::vector<RatFunc> lambda(col + 1, RatFunc(Rat(0)));
            lambda[col] = RatFunc(Rat(1));
            for (long r = static_cast<long>(rank) - 1; r >= 0; --r) {
                std::size_t pc = pivot_col_of_row[r];
                // row r: a[r][pc] lambda_pc + ... + a[r][col] = 0 (after elimination)
                lambda[pc] = RatFunc(Rat(0)) - a[r][col] / a[r][pc];
            }
            if (col + 1 < m) lambda.resize(col + 1);
            return lambda;
        }
        std::swap(a[rank], a[sel]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || a[i][col].is_zero()) continue;
            RatFunc f = a[i][col] / a[rank][col];
            for (std::size_t j = col; j < m; ++j) a[i][j] = a[i][j] - f * a[rank][j];
        }
        pivot_col_of_row.push_back(col);
        pivot_row_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    return std::nullopt;
}

LinDiffOp op_from_lambda(const std::vector<RatFunc>& lambda) {
    // clear denominators
    UPoly den(Rat(1));
    for (const auto& l : lambda)
        if (!l.is_zero()) den = den * l.den();
    std::vector<UPoly> p(lambda.size());
    for (std::size_t k = 0; k < lambda.size(); ++k)
        if (!lambda[k].is_zero()) p[k] = lambda[k].num() * den.divexact(lambda[k].den());
    return LinDiffOp(std::move(p)).normalized();
}

// minimal annihilator of a vector under a derivation step
LinDiffOp min_annihilator(RVec v0, const std::function<RVec(const RVec&)>& step, std::size_t dim) {
    std::vector<RVec> vs{v0};
    for (std::size_t m = 1; m <= dim + 1; ++m) {
        vs.push_back(step(vs.back()));
        auto dep = dependency(vs);
        if (dep) return op_from_lambda(*dep);
    }
    throw domain_error("min_annihilator: no dependency found (internal error)");
}

}  // namespace

LinDiffOp adjoint(const LinDiffOp& L) {
    int n = L.order();
    std::vector<UPoly> q(n + 1);
    for (int m = 0; m <= n; ++m) {
        for (int k = m; k <= n; ++k) {
            UPoly d = L.p[k];
            for (int t = 0; t < k - m; ++t) d = d.derivative();
            Rat c(binomial(k, m));
            if (k % 2) c = -c;
            q[m] = q[m] + d * c;
        }
    }
    return LinDiffOp(std::move(q));
}

namespace {

// wedge/symmetric square module: basis of pairs, derivation with reduction by L
struct PairModule {
    int n;                  // order of L
    bool wedge;             // true: i<j (exterior), false: i<=j (symmetric)
    std::vector<RatFunc> red;  // y^(n) = sum red[k] y^(k)
    std::vector<std::pair<int, int>> basis;
    std::map<std::pair<int, int>, int> index;

    PairModule(const LinDiffOp& L, bool w) : n(L.order()), wedge(w) {
        if (n < 2) throw domain_error("square of an operator of order < 2");
        RatFunc lead(L.p[n], UPoly(Rat(1)));
        for (int k = 0; k < n; ++k)
            red.push_back(RatFunc(Rat(0)) - RatFunc(L.p[k], UPoly(Rat(1))) / lead);
        for (int i = 0; i < n; ++i)
            for (int j = wedge ? i + 1 : i; j < n; ++j) {
                index[{i, j}] = static_cast<int>(basis.size());
                basis.push_back({i, j});
            }
    }
    std::size_t dim() const { return basis.size(); }

    void add_pair(RVec& v, int i, int j, const RatFunc& c) const {
        if (c.is_zero()) return;
        if (i > j) {
            add_pair(v, j, i, wedge ? RatFunc(Rat(0)) - c : c);
            return;
        }
        if (wedge && i == j) return;
        if (j == n) {
            for (int k = 0; k < n; ++k) add_pair(v, i, k, c * red[k]);
            return;
        }
        int idx = index.at({i, j});
        v[idx] = v[idx] + c;
    }

    RVec step(const RVec& v) const {
        RVec out(dim(), RatFunc(Rat(0)));
        for (std::size_t idx = 0; idx < dim(); ++idx) {
            const RatFunc& c = v[idx];
            if (c.is_zero()) continue;
            auto [i, j] = basis[idx];
            out[idx] = out[idx] + c.derivative();
            add_pair(out, i + 1, j, c);
            add_pair(out, i, j + 1, c);
        }
        return out;
    }
};

LinDiffOp square_op(const LinDiffOp& L, bool wedge, unsigned seed) {
    PairModule mod(L.normalized(), wedge);
    RVec v0(mod.dim(), RatFunc(Rat(0)));
    std::pair<int, int> gen = wedge ? std::make_pair(0, 1) : std::make_pair(0, 0);
    v0[mod.index.at(gen)] = RatFunc(Rat(1));
    auto step = [&](const RVec& v) { return mod.step(v); };
    LinDiffOp A = min_annihilator(v0, step, mod.dim());
    if (A.order() >= 1) return A;
    // canonical generator degenerated; retry with a seeded random vector
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coin(1, 9);
    RVec v(mod.dim(), RatFunc(Rat(0)));
    for (auto& e : v) e = RatFunc(Rat(coin(rng)));
    return min_annihilator(v, step, mod.dim());
}

}  // namespace

LinDiffOp exterior_square(const LinDiffOp& L, unsigned seed) { return square_op(L, true, seed); }
LinDiffOp symmetric_square(const LinDiffOp& L, unsigned seed) { return square_op(L, false, seed); }

LinDiffOp pullback_op(const LinDiffOp& L, const RatFunc& p) {
    if (p.num().degree() <= 0 && p.den().degree() <= 0)
        throw domain_error("pullback_op: constant pullback");
    int n = L.order();
    RatFunc lead = RatFunc(L.p[n], UPoly(Rat(1))).compose(p);
    std::vector<RatFunc> red(n);
    for (int k = 0; k < n; ++k)
        red[k] = RatFunc(Rat(0)) - RatFunc(L.p[k], UPoly(Rat(1))).compose(p) / lead;
    RatFunc dp = p.derivative();
    auto step = [&](const RVec& C) {
        RVec out(n, RatFunc(Rat(0)));
        for (int k = 0; k < n; ++k) out[k] = C[k].derivative();
        for (int k = 0; k + 1 < n; ++k) out[k + 1] = out[k + 1] + dp * C[k];
        for (int k = 0; k < n; ++k) out[k] = out[k] + dp * C[n - 1] * red[k];
        return out;
    };
    RVec v0(n, RatFunc(Rat(0)));
    v0[0] = RatFunc(Rat(1));
    return min_annihilator(v0, step, n);
}

LinDiffOp conjugate_op(const LinDiffOp& L, const RatFunc& r) {
    int n = L.order();
    RatFunc lead(L.p[n], UPoly(Rat(1)));
    std::vector<RatFunc> red(n);
    for (int k = 0; k < n; ++k) red[k] = RatFunc(Rat(0)) - RatFunc(L.p[k], UPoly(Rat(1))) / lead;
    auto step = [&](const RVec& C) {
        RVec out(n, RatFunc(Rat(0)));
        for (int k = 0; k < n; ++k) out[k] = C[k].derivative() + r * C[k];
        for (int k = 0; k + 1 < n; ++k) out[k + 1] = out[k + 1] + C[k];
        for (int k = 0; k < n; ++k) out[k] = out[k] + C[n - 1] * red[k];
        return out;
    };
    RVec v0(n, RatFunc(Rat(0)));
    v0[0] = RatFunc(Rat(1));
    return min_annihilator(v0, step, n);
}

GuessReport guess_ode(const USeries& f, int max_order, int max_degree, int guard) {
    int T = f.trunc();
    GuessReport rep;
    bool any_feasible = false;
    // derivatives once
    std::vector<USeries> der{f};
    for (int k = 1; k <= max_order; ++k) der.push_back(der.back().derivative());

    const std::uint64_t P1 = 2305843009213693951ULL;  // 2^61 - 1
    const std::uint64_t P2 = 1152921504606846883ULL;  // prime < 2^60

    for (int r = 1; r <= max_order; ++r) {
        for (int d = 0; d <= max_degree; ++d) {
            int need = (r + 1) * (d + 2);
            if (need + guard - 1 > T) continue;
            any_feasible = true;
            std::size_t ncols = static_cast<std::size_t>(r + 1) * (d + 1);
            int rows = need;
            auto build_rows_mod = [&](const FpCtx& F) {
                std::vector<std::vector<std::uint64_t>> m(
                    rows, std::vector<std::uint64_t>(ncols, 0));
                std::size_t col = 0;
                for (int k = 0; k <= r; ++k)
                    for (int j = 0; j <= d; ++j, ++col)
                        for (int s = j; s < rows; ++s) {
                            if (s - j > der[k].trunc()) break;
                            m[s][col] = F.reduce_rat(der[k][s - j]);
                        }
                return m;
            };
            bool kernel_possible = true;
            for (std::uint64_t prime : {P1, P2}) {
                FpCtx F(prime);
                try {
                    auto m = build_rows_mod(F);
                    if (fp_rank(F, std::move(m)) == ncols) {
                        kernel_possible = false;
                        break;
                    }
                } catch (const domain_error&) {
                    continue;  // prime divides a denominator; other prime decides
                }
            }
            if (!kernel_possible) continue;
            // exact kernel over Q
            std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(ncols, Rat(0)));
            {
                std::size_t col = 0;
                for (int k = 0; k <= r; ++k)
                    for (int j = 0; j <= d; ++j, ++col)
                        for (int s = j; s < rows; ++s) {
                            if (s - j > der[k].trunc()) break;
                            M[s][col] = der[k][s - j];
                        }
            }
            // row reduce
            std::vector<long> pivot_of_col(ncols, -1);
            std::size_t rank = 0;
            for (std::size_t col = 0; col < ncols && rank < M.size(); ++col) {
                std::size_t sel = rank;
                while (sel < M.size() && diagon::is_zero(M[sel][col])) ++sel;
                if (sel == M.size()) continue;
                std::swap(M[rank], M[sel]);
                Rat inv = 1 / M[rank][col];
                for (std::size_t j = col; j < ncols; ++j) M[rank][j] *= inv;
                for (std::size_t i = 0; i < M.size(); ++i) {
                    if (i == rank || diagon::is_zero(M[i][col])) continue;
                    Rat fa = M[i][col];
                    for (std::size_t j = col; j < ncols; ++j) M[i][j] -= fa * M[rank][j];
                }
                pivot_of_col[col] = static_cast<long>(rank);
                ++rank;
            }
            if (rank == ncols) continue;  // modular prediction was unlucky
            // first free column gives the deterministic kernel vector
            std::size_t freec = 0;
            while (freec < ncols && pivot_of_col[freec] >= 0) ++freec;
            std::vector<Rat> sol(ncols, Rat(0));
            sol[freec] = 1;
            for (std::size_t c = 0; c < freec; ++c)
                if (pivot_of_col[c] >= 0) sol[c] = -M[static_cast<std::size_t>(pivot_of_col[c])][freec];
            std::vector<UPoly> ops(r + 1);
            {
                std::size_t col = 0;
                for (int k = 0; k <= r; ++k) {
                    std::vector<Rat> cs(d + 1);
                    for (int j = 0; j <= d; ++j, ++col) cs[j] = sol[col];
                    ops[k] = UPoly(std::move(cs));
                }
            }
            LinDiffOp cand(std::move(ops));
            if (cand.order() < 1) continue;
            USeries resid = apply_op(cand, f);
            if (!resid.is_zero()) continue;  // failed the guard; discard, keep searching
            rep.op = cand.normalized();
            rep.order = cand.order();
            int dd = 0;
            for (const auto& q : rep.op->p) dd = std::max(dd, q.degree());
            rep.degree = dd;
            rep.terms_consumed = need;
            rep.guard_verified = T + 1 - need;
            return rep;
        }
    }
    if (!any_feasible) throw domain_error("guess_ode: insufficient terms for the requested bounds");
    return rep;
}

GuessReport hadamard_op(const LinDiffOp& L1, const LinDiffOp& L2, int max_order, int max_degree,
                        int terms, int guard) {
    USeries a = series_solution(L1, {Rat(1)}, terms);
    USeries b = series_solution(L2, {Rat(1)}, terms);
    USeries h(terms);
    for (int k = 0; k <= terms; ++k) h.at(k) = a[k] * b[k];
    return guess_ode(h, max_order, max_degree, guard);
}

namespace {

std::vector<Rat> rational_roots(const UPoly& poly) {
    // roots with multiplicity, found by divisor search on the integer-primitive
    // form and repeated deflation
    std::vector<Rat> roots;
    UPoly f = poly.primitive_part();
    while (true) {
        if (f.degree() <= 0) break;
        // strip x^k
        if (diagon::is_zero(f.coeff(0))) {
            roots.push_back(0);
            std::vector<Rat> c(f.coeffs().begin() + 1, f.coeffs().end());
            f = UPoly(std::move(c));
            continue;
        }
        Int a0 = numerator(f.coeff(0));
        Int an = numerator(f.leading());
        auto fa0 = factor_partial(a0, 1u << 20, nullptr);
        auto fan = factor_partial(an, 1u << 20, nullptr);
        std::vector<Int> divs0{1}, divsn{1};
        auto extend = [](std::vector<Int>& divs, const std::vector<std::pair<Int, long>>& fac) {
            for (const auto& [p, e] : fac) {
                std::size_t sz = divs.size();
                Int pk = 1;
                for (long i = 1; i <= e; ++i) {
                    pk *= p;
                    for (std::size_t s = 0; s < sz; ++s) divs.push_back(divs[s] * pk);
                }
            }
        };
        extend(divs0, fa0);
        extend(divsn, fan);
        if (divs0.size() * divsn.size() > 200000) break;  // give up, leave as nonrational
        bool found = false;
        for (const auto& pnum : divs0) {
            for (const auto& qden : divsn) {
                for (int sign = 1; sign >= -1; sign -= 2) {
                    Rat cand(sign * pnum, qden);
                    cand.canonicalize();
                    if (diagon::is_zero(f.eval(cand))) {
                        roots.push_back(cand);
                        // deflate by (x - cand)
                        UPoly q, r;
                        UPoly::divrem(f, UPoly::x() - UPoly(cand), q, r);
                        f = q;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    return roots;
}

}  // namespace

Indicial indicial_exponents(const LinDiffOp& L) {
    ThetaForm tf = theta_form(L);
    UPoly q0 = tf.Q[0];
    Indicial out;
    auto roots = rational_roots(q0);
    std::map<Rat, int> mult;
    for (const auto& r : roots) mult[r]++;
    UPoly rem = q0.primitive_part();
    for (const auto& [r, m] : mult) {
        out.exponents.emplace_back(r, m);
        for (int i = 0; i < m; ++i) {
            UPoly q, rr;
            UPoly::divrem(rem, UPoly::x() - UPoly(r), q, rr);
            rem = q;
        }
    }
    out.nonrational = rem.primitive_part();
    return out;
}

bool is_mum(const LinDiffOp& L) {
    ThetaForm tf = theta_form(L);
    const UPoly& q0 = tf.Q[0];
    if (q0.degree() != L.order()) return false;
    for (int k = 0; k < q0.degree(); ++k)
        if (!diagon::is_zero(q0.coeff(k))) return false;
    return true;
}

bool check_rational_solution(const LinDiffOp& L, const RatFunc& candidate) {
    return apply_op(L, candidate).is_zero();
}

std::vector<RatFunc> bounded_rational_solutions(const LinDiffOp& L, int degree_bound,
                                                int power_bound) {
    int n = L.order();
    UPoly lead = L.p[n].primitive_part();
    UPoly sqf = lead.degree() > 0 ? lead.divexact(UPoly::gcd(lead, lead.derivative()))
                                  : UPoly(Rat(1));
    UPoly den(Rat(1));
    for (int i = 0; i < power_bound; ++i) den = den * sqf;
    int nd = degree_bound + den.degree();
    // L(N/den) = 0: numerator coefficients solve a linear system
    RatFunc g(UPoly(Rat(1)), den);
    // G_t = sum_k C(k,t) p_k g^{(k-t)}
    std::vector<RatFunc> gd{g};
    for (int j = 1; j <= n; ++j) gd.push_back(gd.back().derivative());
    std::vector<RatFunc> G(n + 1, RatFunc(Rat(0)));
    for (int t = 0; t <= n; ++t)
        for (int k = t; k <= n; ++k)
            G[t] = G[t] + RatFunc(L.p[k], UPoly(Rat(1))) * gd[k - t] * Rat(binomial(k, t));
    // clear denominators
    UPoly cden(Rat(1));
    for (const auto& q : G)
        if (!q.is_zero()) cden = cden * q.den().divexact(UPoly::gcd(cden, q.den()));
    std::vector<UPoly> Gp(n + 1);
    for (int t = 0; t <= n; ++t)
        if (!G[t].is_zero()) Gp[t] = G[t].num() * cden.divexact(G[t].den());
    // unknown N of degree <= nd
    int maxrow = nd + 1;
    for (int t = 0; t <= n; ++t) maxrow = std::max(maxrow, Gp[t].degree() + nd + 1);
    std::vector<std::vector<Rat>> M(maxrow, std::vector<Rat>(nd + 1, Rat(0)));
    for (int c = 0; c <= nd; ++c) {
        // N = x^c: sum_t Gp[t] * (x^c)^{(t)}
        for (int t = 0; t <= n && t <= c; ++t) {
            if (Gp[t].is_zero()) continue;
            Rat fall = 1;
            for (int i = 0; i < t; ++i) fall *= (c - i);
            UPoly contrib = Gp[t].shift_up(c - t) * fall;
            for (int s = 0; s <= contrib.degree(); ++s) M[s][c] += contrib.coeff(s);
        }
    }
    // exact nullspace
    std::vector<long> pivot_of_col(nd + 1, -1);
    std::size_t rank = 0;
    for (int col = 0; col <= nd && rank < M.size(); ++col) {
        std::size_t sel = rank;
        while (sel < M.size() && diagon::is_zero(M[sel][col])) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[rank], M[sel]);
        Rat inv = 1 / M[rank][col];
        for (int j = col; j <= nd; ++j) M[rank][j] *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == rank || diagon::is_zero(M[i][col])) continue;
            Rat f = M[i][col];
            for (int j = col; j <= nd; ++j) M[i][j] -= f * M[rank][j];
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<RatFunc> out;
    for (int col = 0; col <= nd; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Rat> nc(nd + 1, Rat(0));
        nc[col] = 1;
        for (int c = 0; c < col; ++c)
            if (pivot_of_col[c] >= 0) nc[c] = -M[static_cast<std::size_t>(pivot_of_col[c])][col];
        RatFunc cand(UPoly(std::move(nc)), den);
        if (check_rational_solution(L, cand)) out.push_back(cand);
    }
    return out;
}

std::optional<RatFunc> conjugate_to_adjoint_witness(const LinDiffOp& L) {
    int n = L.order();
    if (n < 1 || n % 2 != 0) return std::nullopt;
    // adjoint(L) = L conjugated by rho forces r = (n p_n' - 2 p_{n-1}) / (n p_n)
    RatFunc pn(L.p[n], UPoly(Rat(1)));
    RatFunc pn1(n >= 1 ? L.p[n - 1] : UPoly(), UPoly(Rat(1)));
    RatFunc r = (pn.derivative() * Rat(n) - pn1 * Rat(2)) / (pn * Rat(n));
    // verify: sum p_k (D + r)^k == adjoint(L) exactly
    std::vector<std::vector<RatFunc>> pw;  // (D+r)^k coefficients
    pw.push_back({RatFunc(Rat(1))});
    for (int k = 1; k <= n; ++k) {
        const auto& prev = pw.back();
        std::vector<RatFunc> cur(k + 1, RatFunc(Rat(0)));
        for (int j = 0; j < k; ++j) {
            cur[j] = cur[j] + prev[j].derivative() + r * prev[j];
            cur[j + 1] = cur[j + 1] + prev[j];
        }
        pw.push_back(std::move(cur));
    }
    std::vector<RatFunc> M(n + 1, RatFunc(Rat(0)));
    for (int k = 0; k <= n; ++k) {
        if (L.p[k].is_zero()) continue;
        RatFunc pk(L.p[k], UPoly(Rat(1)));
        for (int j = 0; j <= k; ++j) M[j] = M[j] + pk * pw[k][j];
    }
    LinDiffOp adj = adjoint(L);
    for (int j = 0; j <= n; ++j) {
        RatFunc diff = M[j] - RatFunc(j <= adj.order() ? adj.p[j] : UPoly(), UPoly(Rat(1)));
        if (!diff.is_zero()) return std::nullopt;
    }
    return r;
}

}  // namespace diagon

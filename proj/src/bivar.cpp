#include "diagon/bivar.hpp"

#include <sstream>

#include "diagon/expr.hpp"
#include "diagon/laurent.hpp"

namespace diagon {

void BivarPoly::add(int i, int j, const Rat& v) {
    if (diagon::is_zero(v)) return;
    auto key = std::make_pair(i, j);
    auto [it, fresh] = c_.try_emplace(key, v);
    if (!fresh) {
        it->second += v;
        if (diagon::is_zero(it->second)) c_.erase(it);
    }
}

int BivarPoly::deg_x() const {
    int d = -1;
    for (const auto& [k, v] : c_) d = std::max(d, k.first);
    return d;
}

int BivarPoly::deg_y() const {
    int d = -1;
    for (const auto& [k, v] : c_) d = std::max(d, k.second);
    return d;
}

int BivarPoly::total_degree() const {
    int d = -1;
    for (const auto& [k, v] : c_) d = std::max(d, k.first + k.second);
    return d;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [k, v] : o.c_) r.add(k.first, k.second, v);
    return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [k, v] : o.c_) r.add(k.first, k.second, -v);
    return r;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (const auto& [ka, va] : c_)
        for (const auto& [kb, vb] : o.c_) r.add(ka.first + kb.first, ka.second + kb.second, va * vb);
    return r;
}

BivarPoly BivarPoly::operator*(const Rat& s) const {
    BivarPoly r;
    for (const auto& [k, v] : c_) r.add(k.first, k.second, v * s);
    return r;
}

BivarPoly BivarPoly::dy() const {
    BivarPoly r;
    for (const auto& [k, v] : c_)
        if (k.second > 0) r.add(k.first, k.second - 1, v * Rat(k.second));
    return r;
}

BivarPoly BivarPoly::subst_x_xy() const {
    BivarPoly r;
    for (const auto& [k, v] : c_) r.add(k.first, k.second + k.first, v);
    return r;
}

BivarPoly BivarPoly::subst_y_shift(const UPoly& s) const {
    // y -> y + s(x), expanded with binomials
    BivarPoly r;
    for (const auto& [k, v] : c_) {
        // (y + s)^j = sum_m C(j,m) y^m s^{j-m}
        int j = k.second;
        std::vector<UPoly> spow(j + 1, UPoly(Rat(1)));
        for (int m = 1; m <= j; ++m) spow[m] = spow[m - 1] * s;
        for (int m = 0; m <= j; ++m) {
            Rat cb(binomial(j, m));
            const UPoly& sp = spow[j - m];
            for (int d = 0; d <= sp.degree(); ++d)
                r.add(k.first + d, m, v * cb * sp.coeff(d));
        }
    }
    return r;
}

std::pair<int, int> BivarPoly::strip_monomial() {
    if (c_.empty()) return {0, 0};
    int a = 1 << 28, b = 1 << 28;
    for (const auto& [k, v] : c_) {
        a = std::min(a, k.first);
        b = std::min(b, k.second);
    }
    if (a == 0 && b == 0) return {0, 0};
    std::map<std::pair<int, int>, Rat> nc;
    for (const auto& [k, v] : c_) nc[{k.first - a, k.second - b}] = v;
    c_ = std::move(nc);
    return {a, b};
}

Rat BivarPoly::eval(const Rat& x, const Rat& y) const {
    Rat r = 0;
    for (const auto& [k, v] : c_) r += v * pow_rat(x, k.first) * pow_rat(y, k.second);
    return r;
}

RatFunc BivarPoly::eval_ratfunc(const RatFunc& u, const RatFunc& v) const {
    RatFunc r(Rat(0));
    int du = deg_x(), dv = deg_y();
    std::vector<RatFunc> up(du + 1, RatFunc(Rat(1))), vp(dv + 1, RatFunc(Rat(1)));
    for (int i = 1; i <= du; ++i) up[i] = up[i - 1] * u;
    for (int j = 1; j <= dv; ++j) vp[j] = vp[j - 1] * v;
    for (const auto& [k, c] : c_) r = r + up[k.first] * vp[k.second] * RatFunc(c);
    return r;
}

USeries BivarPoly::eval_series(const USeries& f) const {
    return eval_series2(USeries::x(f.trunc()), f);
}

USeries BivarPoly::eval_series2(const USeries& u, const USeries& v) const {
    int t = std::min(u.trunc(), v.trunc());
    USeries r(t);
    int du = deg_x(), dv = deg_y();
    std::vector<USeries> up(du + 1, USeries::constant(1, t)), vp(dv + 1, USeries::constant(1, t));
    for (int i = 1; i <= du; ++i) up[i] = up[i - 1] * u.truncated(t);
    for (int j = 1; j <= dv; ++j) vp[j] = vp[j - 1] * v.truncated(t);
    for (const auto& [k, c] : c_) r = r + up[k.first] * vp[k.second] * c;
    return r;
}

namespace {

BivarPoly eval_expr_bivar(const ExprPtr& e) {
    using K = RatExpr::Kind;
    switch (e->kind) {
        case K::Const: return BivarPoly::term(0, 0, e->value);
        case K::Var:
            if (e->var == 0) return BivarPoly::term(1, 0, 1);
            if (e->var == 1) return BivarPoly::term(0, 1, 1);
            throw domain_error("bivariate polynomial: variable out of range");
        case K::Add: return eval_expr_bivar(e->a) + eval_expr_bivar(e->b);
        case K::Sub: return eval_expr_bivar(e->a) - eval_expr_bivar(e->b);
        case K::Mul: return eval_expr_bivar(e->a) * eval_expr_bivar(e->b);
        case K::Neg: return eval_expr_bivar(e->a) * Rat(-1);
        case K::Pow: {
            if (e->ipow < 0) throw domain_error("bivariate polynomial: negative power");
            BivarPoly b = eval_expr_bivar(e->a), r = BivarPoly::term(0, 0, 1);
            for (long k = 0; k < e->ipow; ++k) r = r * b;
            return r;
        }
        case K::Div: {
            BivarPoly d = eval_expr_bivar(e->b);
            if (d.deg_x() > 0 || d.deg_y() > 0)
                throw domain_error("bivariate polynomial: division by non-constant");
            return eval_expr_bivar(e->a) * (1 / d.coeff(0, 0));
        }
        default: throw domain_error("bivariate polynomial: unsupported node");
    }
}

}  // namespace

BivarPoly BivarPoly::parse(const std::string& text) {
    std::string s;
    s.reserve(text.size() + 8);
    for (char c : text) {
        if (c == 'y' || c == 'v') s += "z1";
        else if (c == 'u') s += "z0";
        else s += c;
    }
    return eval_expr_bivar(parse_expr(s, 2));
}

USeries bivar_root_series(const BivarPoly& P, const USeries& seed, int trunc) {
    USeries v = seed.truncated(trunc);
    BivarPoly Py = P.dy();
    for (int iter = 0; iter < 64; ++iter) {
        USeries pv = P.eval_series(v);
        if (pv.is_zero()) return v;
        USeries pyv = Py.eval_series(v);
        LSeries corr = LSeries::from(pv) / LSeries::from(pyv);
        if (corr.offset() < 0) throw domain_error("bivar_root_series: branch not separable");
        USeries cu = corr.to_useries(trunc);
        USeries nv = v - cu;
        if (nv == v) throw domain_error("bivar_root_series: no progress (bad seed?)");
        v = nv;
    }
    throw domain_error("bivar_root_series: did not converge");
}

}  // namespace diagon

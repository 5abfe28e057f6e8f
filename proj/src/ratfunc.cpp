#include "diagon/ratfunc.hpp"

#include "diagon/expr.hpp"

namespace diagon {

namespace {

RatFunc eval_expr_ratfunc(const ExprPtr& e) {
    using K = RatExpr::Kind;
    switch (e->kind) {
        case K::Const: return RatFunc(e->value);
        case K::Var:
            if (e->var != 0) throw domain_error("parse_ratfunc: univariate only");
            return RatFunc::x();
        case K::Add: return eval_expr_ratfunc(e->a) + eval_expr_ratfunc(e->b);
        case K::Sub: return eval_expr_ratfunc(e->a) - eval_expr_ratfunc(e->b);
        case K::Mul: return eval_expr_ratfunc(e->a) * eval_expr_ratfunc(e->b);
        case K::Div: return eval_expr_ratfunc(e->a) / eval_expr_ratfunc(e->b);
        case K::Neg: return -eval_expr_ratfunc(e->a);
        case K::Pow: return eval_expr_ratfunc(e->a).pow(e->ipow);
        case K::Root: throw domain_error("parse_ratfunc: roots are not rational functions");
    }
    throw domain_error("parse_ratfunc: bad node");
}

}  // namespace

RatFunc parse_ratfunc(const std::string& text) {
    return eval_expr_ratfunc(parse_expr(text, 1));
}

RatFunc::RatFunc(UPoly n, UPoly d) {
    if (d.is_zero()) throw domain_error("rational function with zero denominator");
    if (n.is_zero()) {
        num_ = UPoly();
        den_ = UPoly(Rat(1));
        return;
    }
    UPoly g = UPoly::gcd(n, d);
    if (g.degree() > 0) {
        n = n.divexact(g);
        d = d.divexact(g);
    }
    Rat c = d.content();
    num_ = n * (1 / c);
    den_ = d * (1 / c);
}

UPoly RatFunc::as_polynomial() const {
    if (!is_polynomial()) throw domain_error("rational function is not a polynomial");
    return num_ * (1 / den_.coeff(0));
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw domain_error("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::pow(long e) const {
    if (e == 0) return RatFunc(Rat(1));
    RatFunc b = e > 0 ? *this : RatFunc(den_, num_);
    long n = e > 0 ? e : -e;
    RatFunc r(Rat(1));
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

Rat RatFunc::eval(const Rat& v) const {
    Rat d = den_.eval(v);
    if (diagon::is_zero(d)) throw domain_error("pole in rational function evaluation");
    return num_.eval(v) / d;
}

RatFunc RatFunc::compose(const RatFunc& p) const {
    int dn = std::max(num_.degree(), 0), dd = std::max(den_.degree(), 0);
    int d = std::max(dn, dd);
    // this = N/D; N(p) and D(p) each come back over a power of p's denominator,
    // so pad both to the common power q^d before cancelling.
    UPoly n = num_.compose_frac_num(p.num(), p.den());
    UPoly dpol = den_.compose_frac_num(p.num(), p.den());
    for (int k = 0; k < d - dn; ++k) n = n * p.den();
    for (int k = 0; k < d - dd; ++k) dpol = dpol * p.den();
    return RatFunc(n, dpol);
}

std::string RatFunc::str(const std::string& var) const {
    if (is_polynomial()) return as_polynomial().str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

}  // namespace diagon

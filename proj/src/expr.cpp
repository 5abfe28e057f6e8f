#include "diagon/expr.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace diagon {

ExprPtr RatExpr::make_const(const Rat& c) {
    auto e = std::make_shared<RatExpr>();
    e->kind = Kind::Const;
    e->value = c;
    return e;
}

ExprPtr RatExpr::make_var(int v) {
    auto e = std::make_shared<RatExpr>();
    e->kind = Kind::Var;
    e->var = v;
    return e;
}

ExprPtr RatExpr::node(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<RatExpr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr RatExpr::make_pow(ExprPtr a, long p) {
    auto e = std::make_shared<RatExpr>();
    e->kind = Kind::Pow;
    e->ipow = p;
    e->a = std::move(a);
    return e;
}

ExprPtr RatExpr::make_root(ExprPtr a, long q) {
    auto e = std::make_shared<RatExpr>();
    e->kind = Kind::Root;
    e->rootq = q;
    e->a = std::move(a);
    return e;
}

int RatExpr::max_var() const {
    int m = -1;
    if (kind == Kind::Var) m = var;
    if (a) m = std::max(m, a->max_var());
    if (b) m = std::max(m, b->max_var());
    return m;
}

std::string RatExpr::str() const {
    switch (kind) {
        case Kind::Const: return rat_to_string(value);
        case Kind::Var: return "z" + std::to_string(var);
        case Kind::Add: return "(" + a->str() + " + " + b->str() + ")";
        case Kind::Sub: return "(" + a->str() + " - " + b->str() + ")";
        case Kind::Mul: return "(" + a->str() + "*" + b->str() + ")";
        case Kind::Div: return "(" + a->str() + "/" + b->str() + ")";
        case Kind::Neg: return "(-" + a->str() + ")";
        case Kind::Pow: return "(" + a->str() + ")^" + std::to_string(ipow);
        case Kind::Root: return "(" + a->str() + ")^(1/" + std::to_string(rootq) + ")";
    }
    return "?";
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;
    int nvars;

    explicit Parser(const std::string& text, int nv) : s(text), nvars(nv) {}

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, i); }

    Int integer() {
        skip();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected integer");
        return Int(s.substr(start, i - start));
    }

    ExprPtr atom() {
        skip();
        if (i >= s.size()) fail("unexpected end of input");
        char c = s[i];
        if (c == '(') {
            ++i;
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RatExpr::make_const(Rat(integer()));
        }
        if (c == 'x') {
            ++i;
            return RatExpr::make_var(0);
        }
        if (c == 'z') {
            ++i;
            skip();
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                fail("expected digit after 'z'");
            int v = s[i] - '0';
            ++i;
            if (v >= nvars) fail("unknown identifier z" + std::to_string(v));
            return RatExpr::make_var(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) fail("unknown identifier");
        fail("unexpected character");
    }

    // exponent: INT or '(' [-] INT [/ INT] ')'
    ExprPtr power() {
        ExprPtr base = atom();
        skip();
        while (i < s.size() && s[i] == '^') {
            ++i;
            skip();
            bool neg = false;
            Int num, den(1);
            if (eat('(')) {
                if (eat('-')) neg = true;
                num = integer();
                if (eat('/')) den = integer();
                if (!eat(')')) fail("expected ')' in exponent");
            } else {
                if (eat('-')) neg = true;
                num = integer();
            }
            if (den <= 0 || (den > 1 && !mpz_fits_slong_p(den.get_mpz_t())))
                fail("bad exponent denominator");
            if (!mpz_fits_slong_p(num.get_mpz_t())) fail("exponent too large");
            long n = num.get_si(), d = den.get_si();
            long g = std::gcd(n < 0 ? -n : n, d);
            if (g > 1) { n /= g; d /= g; }
            ExprPtr e = base;
            if (d > 1) e = RatExpr::make_root(e, d);
            if (n != 1 || neg) e = RatExpr::make_pow(e, neg ? -n : n);
            base = e;
            skip();
        }
        return base;
    }

    ExprPtr unary() {
        skip();
        if (eat('-')) return RatExpr::node(RatExpr::Kind::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                e = RatExpr::node(RatExpr::Kind::Mul, e, unary());
            } else if (i < s.size() && s[i] == '/') {
                ++i;
                e = RatExpr::node(RatExpr::Kind::Div, e, unary());
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '+') {
                ++i;
                e = RatExpr::node(RatExpr::Kind::Add, e, term());
            } else if (i < s.size() && s[i] == '-') {
                ++i;
                e = RatExpr::node(RatExpr::Kind::Sub, e, term());
            } else {
                break;
            }
        }
        return e;
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& text, int nvars) {
    Parser p(text, nvars);
    ExprPtr e = p.expr();
    p.skip();
    if (p.i != text.size()) throw parse_error("trailing input", p.i);
    return e;
}

MSeries expand(const ExprPtr& e, const MShape& shape) {
    switch (e->kind) {
        case RatExpr::Kind::Const: return MSeries::constant(shape, e->value);
        case RatExpr::Kind::Var:
            if (e->var >= shape.nvars) throw domain_error("expression variable outside shape");
            return MSeries::variable(shape, e->var);
        case RatExpr::Kind::Add: return expand(e->a, shape) + expand(e->b, shape);
        case RatExpr::Kind::Sub: return expand(e->a, shape) - expand(e->b, shape);
        case RatExpr::Kind::Mul: return expand(e->a, shape) * expand(e->b, shape);
        case RatExpr::Kind::Div: {
            MSeries d = expand(e->b, shape);
            if (diagon::is_zero(d.constant_term()))
                throw domain_error("non-invertible denominator (constant term zero)");
            return expand(e->a, shape) * d.invert();
        }
        case RatExpr::Kind::Neg: return -expand(e->a, shape);
        case RatExpr::Kind::Pow: return expand(e->a, shape).pow_int(e->ipow);
        case RatExpr::Kind::Root: return expand(e->a, shape).nth_root(e->rootq);
    }
    throw domain_error("bad expression node");
}

MSeries expand(const ExprPtr& e, const std::vector<int>& bounds) {
    return expand(e, MShape(static_cast<int>(bounds.size()), bounds));
}

USeries expand_univariate(const ExprPtr& e, int trunc) {
    MShape s(1, {trunc});
    return expand(e, s).to_useries(trunc);
}

USeries expand_univariate(const std::string& text, int trunc) {
    return expand_univariate(parse_expr(text, 1), trunc);
}

}  // namespace diagon

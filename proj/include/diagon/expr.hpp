#pragma once

#include <memory>
#include <string>

#include "diagon/mseries.hpp"
#include "diagon/rational.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Expression tree for multivariate rational (and unit-constant-term algebraic)
// functions over variables z0..z9; `x` is an alias for z0.
struct RatExpr {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Root };
    Kind kind;
    Rat value;      // Const
    int var = -1;   // Var
    long ipow = 0;  // Pow exponent
    long rootq = 1; // Root index (q >= 2)
    std::shared_ptr<const RatExpr> a, b;

    static std::shared_ptr<const RatExpr> make_const(const Rat& c);
    static std::shared_ptr<const RatExpr> make_var(int v);
    static std::shared_ptr<const RatExpr> node(Kind k, std::shared_ptr<const RatExpr> a,
                                               std::shared_ptr<const RatExpr> b = nullptr);
    static std::shared_ptr<const RatExpr> make_pow(std::shared_ptr<const RatExpr> a, long e);
    static std::shared_ptr<const RatExpr> make_root(std::shared_ptr<const RatExpr> a, long q);

    int max_var() const;
    std::string str() const;
};

using ExprPtr = std::shared_ptr<const RatExpr>;

// Grammar: integers, rationals a/b, variables x (= z0), z0..z9, + - * / ^,
// parentheses; ^ takes an integer or a parenthesised rational exponent, the
// rational case meaning a root node. Whitespace insignificant.
ExprPtr parse_expr(const std::string& text, int nvars);

MSeries expand(const ExprPtr& e, const MShape& shape);
// convenience wrappers
MSeries expand(const ExprPtr& e, const std::vector<int>& bounds);
USeries expand_univariate(const ExprPtr& e, int trunc);
USeries expand_univariate(const std::string& text, int trunc);

}  // namespace diagon

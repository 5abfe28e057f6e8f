#pragma once

#include <map>
#include <string>

#include "diagon/ratfunc.hpp"
#include "diagon/upoly.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Bivariate polynomial over Q, sparse in (x-degree, y-degree).
class BivarPoly {
   public:
    BivarPoly() = default;

    static BivarPoly term(int i, int j, const Rat& c) {
        BivarPoly p;
        if (!diagon::is_zero(c)) p.c_[{i, j}] = c;
        return p;
    }
    // parse with variables x (first) and y == z1
    static BivarPoly parse(const std::string& text);

    const std::map<std::pair<int, int>, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Rat coeff(int i, int j) const {
        auto it = c_.find({i, j});
        return it == c_.end() ? Rat(0) : it->second;
    }
    int deg_x() const;
    int deg_y() const;
    int total_degree() const;

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly operator*(const Rat& s) const;

    BivarPoly dy() const;  // partial derivative in y
    // substitute x -> x*y
    BivarPoly subst_x_xy() const;
    // substitute y -> y + s(x) for polynomial s
    BivarPoly subst_y_shift(const UPoly& s) const;
    // divide out the largest common monomial x^a y^b; returns (a, b)
    std::pair<int, int> strip_monomial();

    Rat eval(const Rat& x, const Rat& y) const;
    // P(u(x), v(x)) for rational functions; exact
    RatFunc eval_ratfunc(const RatFunc& u, const RatFunc& v) const;
    // P(x, f(x)) as a truncated series
    USeries eval_series(const USeries& f) const;
    // P(u(x), v(x)) for truncated series u, v
    USeries eval_series2(const USeries& u, const USeries& v) const;

    std::string str(const std::string& xv = "x", const std::string& yv = "y") const;

   private:
    void add(int i, int j, const Rat& v);
    std::map<std::pair<int, int>, Rat> c_;
};

// Power-series root of P(x, y) = 0 lifted by Newton from a seed segment.
// The seed must satisfy P(x, seed) = 0 to its own truncation and determine
// the branch; throws if the iteration fails to improve.
USeries bivar_root_series(const BivarPoly& P, const USeries& seed, int trunc);

}  // namespace diagon

#pragma once

#include <string>
#include <vector>

#include "diagon/rational.hpp"
#include "diagon/upoly.hpp"

namespace diagon {

// Truncated power series over Q: coefficients of x^0..x^trunc, all exact.
class USeries {
   public:
    USeries() : c_(1, Rat(0)) {}
    explicit USeries(int trunc) : c_(trunc + 1, Rat(0)) {
        if (trunc < 0) throw domain_error("negative truncation");
    }
    USeries(int trunc, std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        c_.resize(trunc + 1, Rat(0));
    }
    static USeries constant(const Rat& v, int trunc) {
        USeries s(trunc);
        s.c_[0] = v;
        return s;
    }
    static USeries x(int trunc) {
        USeries s(trunc);
        if (trunc >= 1) s.c_[1] = 1;
        return s;
    }
    static USeries from_poly(const UPoly& p, int trunc);

    int trunc() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& operator[](int k) const;
    Rat& at(int k);
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    int order() const;  // index of first nonzero coefficient; trunc()+1 if zero

    USeries truncated(int t) const;
    USeries operator-() const;
    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries operator*(const USeries& o) const;
    USeries operator*(const Rat& s) const;
    bool operator==(const USeries& o) const { return c_ == o.c_; }

    USeries mul_poly(const UPoly& p) const;
    USeries shift_up(int k) const;            // * x^k, truncation kept
    USeries shift_down(int k) const;          // / x^k, first k coefficients must vanish
    USeries derivative() const;               // truncation drops by 1
    USeries theta() const;                    // x d/dx, truncation kept
    USeries integrate() const;                // antiderivative with zero constant term
    USeries rescale(const Rat& lambda) const; // x -> lambda x

    std::string str(const std::string& var = "x", int max_terms = -1) const;

   private:
    std::vector<Rat> c_;
};

// f must have nonzero constant term.
USeries series_invert(const USeries& f);
// g(0) = 0.
USeries series_compose(const USeries& f, const USeries& g);
// a0 = 0, a1 != 0; compositional inverse.
USeries series_reverse(const USeries& f);
// a0 = 0.
USeries series_exp(const USeries& f);
// a0 = 1.
USeries series_log(const USeries& f);
// a0 = 1, q >= 2 (q = 1 allowed, identity).
USeries series_nth_root(const USeries& f, long q);
// arbitrary rational power of a series with a0 = 1
USeries series_pow_rat(const USeries& f, const Rat& e);

}  // namespace diagon

#pragma once

#include <string>
#include <vector>

#include "diagon/rational.hpp"

namespace diagon {

// Dense univariate polynomial over Q; coefficient k is the coefficient of x^k.
// The highest stored coefficient is nonzero unless the polynomial is zero.
class UPoly {
   public:
    UPoly() = default;
    explicit UPoly(const Rat& c) {
        if (!diagon::is_zero(c)) c_ = {c};
    }
    explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x(int k = 1) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = 1;
        return UPoly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rat(0);
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat eval(const Rat& v) const;

    UPoly operator-() const;
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly operator*(const Rat& s) const;
    bool operator==(const UPoly& o) const { return c_ == o.c_; }

    UPoly derivative() const;
    UPoly shift_up(int k) const;  // multiply by x^k

    // Quotient and remainder over Q; `o` must be nonzero.
    static void divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
    UPoly divexact(const UPoly& b) const;

    // Monic gcd, then scaled integer-primitive with positive leading coefficient.
    static UPoly gcd(UPoly a, UPoly b);

    // Largest rational c with this = c * (integer primitive, positive leading).
    Rat content() const;
    UPoly primitive_part() const { return *this * (1 / content()); }

    // this(p/q) written over a power of q: returns (N, e) with
    // this(p/q) = N / q^e and e = max(degree, 0).
    UPoly compose_frac_num(const UPoly& p, const UPoly& q) const;

    std::string str(const std::string& var = "x") const;

   private:
    void trim() {
        while (!c_.empty() && diagon::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Rat> c_;
};

}  // namespace diagon

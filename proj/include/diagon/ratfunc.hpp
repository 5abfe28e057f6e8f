#pragma once

#include "diagon/upoly.hpp"

namespace diagon {

// Rational function over Q, kept with cancelled gcd and an integer-primitive,
// positive-leading denominator.
class RatFunc {
   public:
    RatFunc() : num_(), den_(Rat(1)) {}
    RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}
    RatFunc(UPoly n, UPoly d);
    static RatFunc x() { return RatFunc(UPoly::x(), UPoly(Rat(1))); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    UPoly as_polynomial() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc derivative() const;
    RatFunc pow(long e) const;
    Rat eval(const Rat& v) const;

    // this(p(x)) for rational p.
    RatFunc compose(const RatFunc& p) const;

    std::string str(const std::string& var = "x") const;

   private:
    UPoly num_, den_;
};

RatFunc parse_ratfunc(const std::string& text);  // uses the z0.. / x grammar, 1 variable

}  // namespace diagon

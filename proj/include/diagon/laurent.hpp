#pragma once

#include "diagon/useries.hpp"

namespace diagon {

// x^off * (power series): the handful of places that need a pole or a
// factored-out leading power (Wronskian ladders, Schwarzian checks) use this.
class LSeries {
   public:
    LSeries() : off_(0), u_(0) {}
    LSeries(int off, USeries u) : off_(off), u_(std::move(u)) { normalize(); }
    static LSeries from(const USeries& u) { return LSeries(0, u); }
    static LSeries constant(const Rat& c, int trunc) { return LSeries(0, USeries::constant(c, trunc)); }

    int offset() const { return off_; }
    const USeries& unit() const { return u_; }
    bool is_zero() const { return u_.is_zero(); }
    // coefficient of x^k
    Rat coeff(int k) const {
        int i = k - off_;
        return (i >= 0 && i <= u_.trunc()) ? u_[i] : Rat(0);
    }
    int abs_trunc() const { return off_ + u_.trunc(); }  // highest reliable exponent

    LSeries operator-() const { return LSeries(off_, -u_); }
    LSeries operator+(const LSeries& o) const;
    LSeries operator-(const LSeries& o) const { return *this + (-o); }
    LSeries operator*(const LSeries& o) const { return LSeries(off_ + o.off_, u_ * o.u_); }
    LSeries operator*(const Rat& s) const { return LSeries(off_, u_ * s); }

    LSeries invert() const;  // leading coefficient of the unit part must be nonzero
    LSeries operator/(const LSeries& o) const { return *this * o.invert(); }
    LSeries derivative() const;
    LSeries pow(long e) const;
    // unit part must start at 1 after removing an even offset (q | off required)
    LSeries nth_root(long q) const;

    // drops coefficients of exponent > t
    LSeries truncated_abs(int t) const { return LSeries(off_, u_.truncated(t - off_)); }
    // series part; offset must be >= 0
    USeries to_useries(int trunc) const;

    std::string str(const std::string& var = "x") const;

   private:
    void normalize();
    int off_;
    USeries u_;
};

}  // namespace diagon

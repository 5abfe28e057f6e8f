#include "diagon/laurent.hpp"

namespace diagon {

void LSeries::normalize() {
    int k = u_.order();
    if (k > u_.trunc()) return;  // zero series, leave as is
    if (k > 0) {
        off_ += k;
        u_ = u_.shift_down(k);
    }
}

LSeries LSeries::operator+(const LSeries& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int off = std::min(off_, o.off_);
    int hi = std::min(abs_trunc(), o.abs_trunc());
    USeries u(hi - off);
    for (int k = off; k <= hi; ++k) u.at(k - off) = coeff(k) + o.coeff(k);
    return LSeries(off, std::move(u));
}

LSeries LSeries::invert() const {
    if (is_zero() || diagon::is_zero(u_[0]))
        throw domain_error("LSeries::invert: zero leading part");
    return LSeries(-off_, series_invert(u_));
}

LSeries LSeries::derivative() const {
    // d/dx x^e u = x^{e-1} (e u + x u')
    USeries xu = u_.derivative().shift_up(1).truncated(u_.trunc());
    USeries v = u_ * Rat(off_) + xu;
    // the top coefficient of x u' is not reliable beyond trunc-? derivative loses
    // the top term; keep trunc-1 to stay honest
    return LSeries(off_ - 1, v.truncated(u_.trunc() - 1));
}

LSeries LSeries::pow(long e) const {
    if (e == 0) return LSeries(0, USeries::constant(1, u_.trunc()));
    LSeries b = e > 0 ? *this : invert();
    long n = e > 0 ? e : -e;
    LSeries r(0, USeries::constant(1, u_.trunc()));
    while (n) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

LSeries LSeries::nth_root(long q) const {
    if (off_ % q != 0) throw domain_error("LSeries::nth_root: offset not divisible");
    Rat c = u_[0];
    if (!is_one(c)) {
        // factor a rational q-th root of the constant if one exists
        if (sgn(c) < 0 && q % 2 == 0)
            throw domain_error("LSeries::nth_root: negative constant under even root");
        Int rn, rd;
        if (mpz_root(rn.get_mpz_t(), numerator(c).get_mpz_t(), q) == 0 ||
            mpz_root(rd.get_mpz_t(), denominator(c).get_mpz_t(), q) == 0)
            throw domain_error("LSeries::nth_root: constant term is not a rational q-th power");
        Rat r(rn, rd);
        r.canonicalize();
        return LSeries(off_ / q, series_nth_root(u_ * (1 / c), q) * r);
    }
    return LSeries(off_ / q, series_nth_root(u_, q));
}

USeries LSeries::to_useries(int trunc) const {
    if (is_zero()) return USeries(trunc);
    if (off_ < 0) throw domain_error("LSeries::to_useries: negative offset");
    USeries r(trunc);
    for (int k = 0; k <= trunc; ++k) r.at(k) = coeff(k);
    return r;
}

std::string LSeries::str(const std::string& var) const {
    if (off_ == 0) return u_.str(var);
    return var + "^(" + std::to_string(off_) + ") * (" + u_.str(var) + ")";
}

}  // namespace diagon

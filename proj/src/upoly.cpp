#include "diagon/upoly.hpp"

#include <sstream>

namespace diagon {

Rat UPoly::eval(const Rat& v) const {
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
    return r;
}

UPoly UPoly::operator-() const {
    UPoly r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return UPoly(std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + (-o); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (diagon::is_zero(c_[i])) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return UPoly(std::move(v));
}

UPoly UPoly::operator*(const Rat& s) const {
    if (diagon::is_zero(s)) return UPoly();
    UPoly r = *this;
    for (auto& q : r.c_) q *= s;
    return r;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rat> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return UPoly(std::move(v));
}

UPoly UPoly::shift_up(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<Rat> v(c_.size() + k, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
    return UPoly(std::move(v));
}

void UPoly::divrem(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw domain_error("polynomial division by zero");
    r = a;
    std::vector<Rat> qc;
    int db = b.degree();
    if (a.degree() >= db) qc.assign(a.degree() - db + 1, Rat(0));
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rat f = r.leading() / b.leading();
        qc[k] = f;
        r = r - b.shift_up(k) * f;
    }
    q = UPoly(std::move(qc));
}

UPoly UPoly::divexact(const UPoly& b) const {
    UPoly q, r;
    divrem(*this, b, q, r);
    if (!r.is_zero()) throw domain_error("inexact polynomial division");
    return q;
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
    if (a.is_zero()) return b.is_zero() ? b : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    while (!b.is_zero()) {
        UPoly q, r;
        divrem(a, b, q, r);
        a = b;
        b = r;
        if (!b.is_zero()) b = b * (1 / b.leading());  // keeps coefficients tame
    }
    return a.primitive_part();
}

Rat UPoly::content() const {
    if (is_zero()) return 1;
    Int den_lcm = 1, num_gcd = 0;
    for (const auto& q : c_) {
        if (diagon::is_zero(q)) continue;
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), denominator(q).get_mpz_t());
    }
    for (const auto& q : c_) {
        if (diagon::is_zero(q)) continue;
        Int n = numerator(q) * (den_lcm / denominator(q));
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    if (sgn(leading()) < 0) c = -c;
    return c;
}

UPoly UPoly::compose_frac_num(const UPoly& p, const UPoly& q) const {
    // homogenised Horner: N = sum c_k p^k q^{d-k}
    int d = degree();
    if (d < 0) return UPoly();
    UPoly n(coeff(d));
    UPoly qpow(Rat(1));
    for (int k = d - 1; k >= 0; --k) {
        qpow = qpow * q;
        n = n * p + qpow * coeff(k);
    }
    return n;
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rat c = coeff(k);
        if (diagon::is_zero(c)) continue;
        if (!first) os << (sgn(c) > 0 ? " + " : " - ");
        else if (sgn(c) < 0) os << "-";
        Rat a = abs(c);
        bool unit = (a == 1) && k > 0;
        if (!unit) os << rat_to_string(a);
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

}  // namespace diagon

#include "diagon/useries.hpp"

#include <sstream>

namespace diagon {

USeries USeries::from_poly(const UPoly& p, int trunc) {
    USeries s(trunc);
    for (int k = 0; k <= std::min(trunc, p.degree()); ++k) s.c_[k] = p.coeff(k);
    return s;
}

const Rat& USeries::operator[](int k) const {
    if (k < 0 || k > trunc()) throw domain_error("series coefficient beyond truncation");
    return c_[k];
}

Rat& USeries::at(int k) {
    if (k < 0 || k > trunc()) throw domain_error("series coefficient beyond truncation");
    return c_[k];
}

bool USeries::is_zero() const {
    for (const auto& q : c_)
        if (!diagon::is_zero(q)) return false;
    return true;
}

int USeries::order() const {
    for (int k = 0; k <= trunc(); ++k)
        if (!diagon::is_zero(c_[k])) return k;
    return trunc() + 1;
}

USeries USeries::truncated(int t) const {
    USeries r(t);
    for (int k = 0; k <= std::min(t, trunc()); ++k) r.c_[k] = c_[k];
    return r;
}

USeries USeries::operator-() const {
    USeries r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

USeries USeries::operator+(const USeries& o) const {
    int t = std::min(trunc(), o.trunc());
    USeries r(t);
    for (int k = 0; k <= t; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

USeries USeries::operator-(const USeries& o) const {
    int t = std::min(trunc(), o.trunc());
    USeries r(t);
    for (int k = 0; k <= t; ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
}

USeries USeries::operator*(const USeries& o) const {
    int t = std::min(trunc(), o.trunc());
    USeries r(t);
    for (int i = 0; i <= t; ++i) {
        if (diagon::is_zero(c_[i])) continue;
        for (int j = 0; i + j <= t && j <= o.trunc(); ++j) {
            if (diagon::is_zero(o.c_[j])) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

USeries USeries::operator*(const Rat& s) const {
    USeries r = *this;
    for (auto& q : r.c_) q *= s;
    return r;
}

USeries USeries::mul_poly(const UPoly& p) const {
    USeries r(trunc());
    for (int i = 0; i <= std::min(p.degree(), trunc()); ++i) {
        if (diagon::is_zero(p.coeff(i))) continue;
        for (int j = 0; i + j <= trunc(); ++j) r.c_[i + j] += p.coeff(i) * c_[j];
    }
    return r;
}

USeries USeries::shift_up(int k) const {
    USeries r(trunc());
    for (int i = 0; i + k <= trunc(); ++i) r.c_[i + k] = c_[i];
    return r;
}

USeries USeries::shift_down(int k) const {
    for (int i = 0; i < k && i <= trunc(); ++i)
        if (!diagon::is_zero(c_[i])) throw domain_error("shift_down hits nonzero coefficient");
    USeries r(trunc() - k);
    for (int i = 0; i <= r.trunc(); ++i) r.c_[i] = c_[i + k];
    return r;
}

USeries USeries::derivative() const {
    if (trunc() == 0) return USeries(0);
    USeries r(trunc() - 1);
    for (int k = 1; k <= trunc(); ++k) r.c_[k - 1] = c_[k] * Rat(k);
    return r;
}

USeries USeries::theta() const {
    USeries r(trunc());
    for (int k = 0; k <= trunc(); ++k) r.c_[k] = c_[k] * Rat(k);
    return r;
}

USeries USeries::integrate() const {
    USeries r(trunc() + 1);
    for (int k = 0; k <= trunc(); ++k) r.c_[k + 1] = c_[k] / Rat(k + 1);
    return r;
}

USeries USeries::rescale(const Rat& lambda) const {
    USeries r(trunc());
    Rat f = 1;
    for (int k = 0; k <= trunc(); ++k) {
        r.c_[k] = c_[k] * f;
        f *= lambda;
    }
    return r;
}

std::string USeries::str(const std::string& var, int max_terms) const {
    std::ostringstream os;
    bool first = true;
    int shown = 0;
    for (int k = 0; k <= trunc(); ++k) {
        if (diagon::is_zero(c_[k])) continue;
        if (max_terms >= 0 && shown >= max_terms) break;
        Rat a = abs(c_[k]);
        if (!first) os << (sgn(c_[k]) > 0 ? " + " : " - ");
        else if (sgn(c_[k]) < 0) os << "-";
        bool unit = (a == 1) && k > 0;
        if (!unit) os << rat_to_string(a);
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << trunc() + 1 << ")";
    return os.str();
}

USeries series_invert(const USeries& f) {
    if (diagon::is_zero(f[0])) throw domain_error("series_invert: constant term is zero");
    int t = f.trunc();
    USeries r(t);
    Rat inv0 = 1 / f[0];
    r.at(0) = inv0;
    for (int n = 1; n <= t; ++n) {
        Rat s = 0;
        for (int k = 1; k <= n; ++k) s += f[k] * r[n - k];
        r.at(n) = -s * inv0;
    }
    return r;
}

USeries series_compose(const USeries& f, const USeries& g) {
    if (!diagon::is_zero(g[0])) throw domain_error("series_compose: inner constant term nonzero");
    int t = std::min(f.trunc(), g.trunc());
    USeries gt = g.truncated(t);
    USeries r = USeries::constant(f[t], t);
    for (int k = t - 1; k >= 0; --k) {
        r = r * gt;
        r.at(0) += f[k];
    }
    return r;
}

USeries series_reverse(const USeries& f) {
    if (!diagon::is_zero(f[0])) throw domain_error("series_reverse: a0 != 0");
    if (f.trunc() < 1 || diagon::is_zero(f[1])) throw domain_error("series_reverse: a1 == 0");
    int t = f.trunc();
    // Newton iteration r <- r - (f(r) - x) / f'(r), doubling accuracy each pass.
    // The error has high order, so the division only needs f'(r) to a lower
    // precision than the current step target.
    USeries r(t);
    r.at(1) = 1 / f[1];
    const USeries fd = f.derivative();
    int prec = 2;
    while (prec < t + 1) {
        prec = std::min(2 * prec, t + 1);
        USeries rc = r.truncated(prec - 1);
        USeries err = series_compose(f, rc) - USeries::x(prec - 1);
        int p = err.order();
        if (p > err.trunc()) {
            r = rc.truncated(t);
            if (prec == t + 1) break;
            continue;
        }
        USeries e = err.shift_down(p);
        USeries fdr = series_compose(fd, rc).truncated(e.trunc());
        USeries q = e * series_invert(fdr);
        USeries corr(prec - 1);
        for (int k = 0; k + p <= prec - 1 && k <= q.trunc(); ++k) corr.at(k + p) = q[k];
        r = (rc - corr).truncated(t);
    }
    return r;
}

USeries series_exp(const USeries& f) {
    if (!diagon::is_zero(f[0])) throw domain_error("series_exp: a0 != 0");
    int t = f.trunc();
    USeries fd(t);  // f' kept at full length, top coefficient unknown -> stop at t
    for (int k = 1; k <= t; ++k) fd.at(k - 1) = f[k] * Rat(k);
    USeries r(t);
    r.at(0) = 1;
    // r' = f' r  =>  n r_n = sum_{k=1..n} k f_k r_{n-k}
    for (int n = 1; n <= t; ++n) {
        Rat s = 0;
        for (int k = 1; k <= n; ++k) s += Rat(k) * f[k] * r[n - k];
        r.at(n) = s / Rat(n);
    }
    return r;
}

USeries series_log(const USeries& f) {
    if (!is_one(f[0])) throw domain_error("series_log: a0 != 1");
    int t = f.trunc();
    // log(f)' = f'/f; integrate with zero constant.
    USeries r(t);
    // g_n: n f_n = sum_{k=0..n-1} (n-k) r'_{...}; use direct recurrence:
    // n f_n = sum_{k=1..n} k g_k f_{n-k}  where g = log f
    for (int n = 1; n <= t; ++n) {
        Rat s = Rat(n) * f[n];
        for (int k = 1; k < n; ++k) s -= Rat(k) * r[k] * f[n - k];
        r.at(n) = s / Rat(n);
    }
    return r;
}

USeries series_nth_root(const USeries& f, long q) {
    if (!is_one(f[0])) throw domain_error("series_nth_root: a0 != 1");
    if (q < 1) throw domain_error("series_nth_root: q < 1");
    if (q == 1) return f;
    return series_exp(series_log(f) * Rat(1, q));
}

USeries series_pow_rat(const USeries& f, const Rat& e) {
    if (!is_one(f[0])) throw domain_error("series_pow_rat: a0 != 1");
    return series_exp(series_log(f) * e);
}

}  // namespace diagon

#include "diagon/mseries.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace diagon {

MShape::MShape(int n, std::vector<int> b, int lvar, int llow)
    : nvars(n), bound(std::move(b)), laurent_var(lvar), laurent_low(llow) {
    if (n < 1 || n > kMaxVars) throw domain_error("MShape: variable count out of range");
    if (static_cast<int>(bound.size()) != n) throw domain_error("MShape: bounds size mismatch");
    if (lvar >= n) throw domain_error("MShape: bad laurent variable");
    if (lvar >= 0 && llow > 0) throw domain_error("MShape: laurent lower bound must be <= 0");
    bits = 64 / n;
    for (int v = 0; v < n; ++v) {
        long range = static_cast<long>(bound[v]) - low(v);
        if (bound[v] < 0 || range < 0 || (range + 1) > (1L << std::min(bits, 30)))
            throw domain_error("MShape: bounds too large for key packing");
    }
}

std::uint64_t MShape::pack(const Expo& e) const {
    std::uint64_t k = 0;
    for (int v = 0; v < nvars; ++v)
        k |= static_cast<std::uint64_t>(e[v] - low(v)) << (bits * v);
    return k;
}

Expo MShape::unpack(std::uint64_t k) const {
    Expo e{};
    std::uint64_t mask = (bits == 64) ? ~0ULL : ((1ULL << bits) - 1);
    for (int v = 0; v < nvars; ++v)
        e[v] = static_cast<int>((k >> (bits * v)) & mask) + low(v);
    return e;
}

bool MShape::in_box(const Expo& e) const {
    for (int v = 0; v < nvars; ++v)
        if (e[v] < low(v) || e[v] > bound[v]) return false;
    return true;
}

int MShape::grade(const Expo& e) const {
    int g = 0;
    for (int v = 0; v < nvars; ++v)
        if (v != laurent_var) g += e[v];
    return g;
}

int MShape::max_grade() const {
    int g = 0;
    for (int v = 0; v < nvars; ++v)
        if (v != laurent_var) g += bound[v];
    return g;
}

MSeries MSeries::constant(const MShape& s, const Rat& c) {
    MSeries r(s);
    if (!diagon::is_zero(c)) r.m_.emplace(s.pack(Expo{}), c);
    return r;
}

MSeries MSeries::variable(const MShape& s, int v) {
    Expo e{};
    e[v] = 1;
    return monomial(s, e, 1);
}

MSeries MSeries::monomial(const MShape& s, const Expo& e, const Rat& c) {
    MSeries r(s);
    if (!s.in_box(e)) return r;
    if (!diagon::is_zero(c)) r.m_.emplace(s.pack(e), c);
    return r;
}

Rat MSeries::coeff(const Expo& e) const {
    if (!shape_.in_box(e)) return 0;
    auto it = m_.find(shape_.pack(e));
    return it == m_.end() ? Rat(0) : it->second;
}

void MSeries::set_coeff(const Expo& e, const Rat& c) {
    if (!shape_.in_box(e)) throw domain_error("MSeries::set_coeff outside box");
    if (diagon::is_zero(c))
        m_.erase(shape_.pack(e));
    else
        m_[shape_.pack(e)] = c;
}

Rat MSeries::constant_term() const { return coeff(Expo{}); }

void MSeries::add_term(const Expo& e, const Rat& c) {
    if (!shape_.in_box(e) || diagon::is_zero(c)) return;
    auto key = shape_.pack(e);
    auto [it, fresh] = m_.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (diagon::is_zero(it->second)) m_.erase(it);
    }
}

MSeries MSeries::operator-() const {
    MSeries r = *this;
    for (auto& [k, v] : r.m_) v = -v;
    return r;
}

MSeries MSeries::operator+(const MSeries& o) const {
    if (!(shape_ == o.shape_)) throw domain_error("MSeries shape mismatch");
    MSeries r = *this;
    for (const auto& [k, v] : o.m_) {
        auto [it, fresh] = r.m_.try_emplace(k, v);
        if (!fresh) {
            it->second += v;
            if (diagon::is_zero(it->second)) r.m_.erase(it);
        }
    }
    return r;
}

MSeries MSeries::operator-(const MSeries& o) const { return *this + (-o); }

MSeries MSeries::operator*(const MSeries& o) const {
    if (!(shape_ == o.shape_)) throw domain_error("MSeries shape mismatch");
    MSeries r(shape_);
    const MSeries& small = term_count() <= o.term_count() ? *this : o;
    const MSeries& big = term_count() <= o.term_count() ? o : *this;
    for (const auto& [ka, va] : small.m_) {
        Expo ea = shape_.unpack(ka);
        for (const auto& [kb, vb] : big.m_) {
            Expo eb = shape_.unpack(kb);
            Expo e;
            for (int v = 0; v < shape_.nvars; ++v) e[v] = ea[v] + eb[v];
            r.add_term(e, va * vb);
        }
    }
    return r;
}

MSeries MSeries::operator*(const Rat& s) const {
    if (diagon::is_zero(s)) return MSeries(shape_);
    MSeries r = *this;
    for (auto& [k, v] : r.m_) v *= s;
    return r;
}

bool MSeries::operator==(const MSeries& o) const {
    if (!(shape_ == o.shape_) || m_.size() != o.m_.size()) return false;
    for (const auto& [k, v] : m_) {
        auto it = o.m_.find(k);
        if (it == o.m_.end() || !(it->second == v)) return false;
    }
    return true;
}

MSeries MSeries::pow_int(long e) const {
    if (e < 0) return invert().pow_int(-e);
    MSeries r = constant(shape_, 1);
    MSeries b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = (e >>= 1) ? b * b : b;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, Rat>> MSeries::sorted_by_grade() const {
    std::vector<std::pair<std::uint64_t, Rat>> v(m_.begin(), m_.end());
    std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
        int ga = shape_.grade(shape_.unpack(a.first)), gb = shape_.grade(shape_.unpack(b.first));
        if (ga != gb) return ga < gb;
        return a.first < b.first;
    });
    return v;
}

MSeries MSeries::invert() const {
    Rat c0 = constant_term();
    if (diagon::is_zero(c0)) throw domain_error("MSeries::invert: constant term zero");
    // every monomial besides the constant must have positive grade
    auto terms = sorted_by_grade();
    for (const auto& [k, v] : terms) {
        Expo e = shape_.unpack(k);
        if (shape_.grade(e) == 0 && k != shape_.pack(Expo{}))
            throw domain_error("MSeries::invert: grade-0 part is not constant");
    }
    // E = c0 - this, all grades >= 1;  r = (1/c0) sum (E/c0)^k computed by grade
    std::vector<std::pair<Expo, Rat>> E;
    for (const auto& [k, v] : terms) {
        if (k == shape_.pack(Expo{})) continue;
        E.emplace_back(shape_.unpack(k), -v);
    }
    Rat ic = 1 / c0;
    int G = shape_.max_grade();
    std::vector<std::vector<std::pair<Expo, Rat>>> rbyg(G + 1);
    rbyg[0].push_back({Expo{}, ic});
    MSeries r(shape_);
    r.add_term(Expo{}, ic);
    for (int g = 1; g <= G; ++g) {
        std::unordered_map<std::uint64_t, Rat> acc;
        for (const auto& [ee, ev] : E) {
            int ge = shape_.grade(ee);
            if (ge > g) continue;
            for (const auto& [re, rv] : rbyg[g - ge]) {
                Expo e;
                bool ok = true;
                for (int v = 0; v < shape_.nvars; ++v) {
                    e[v] = ee[v] + re[v];
                    if (e[v] > shape_.bound[v] || e[v] < shape_.low(v)) { ok = false; break; }
                }
                if (!ok) continue;
                auto [it, fresh] = acc.try_emplace(shape_.pack(e), ev * rv);
                if (!fresh) it->second += ev * rv;
            }
        }
        for (auto& [k, v] : acc) {
            if (diagon::is_zero(v)) continue;
            v *= ic;
            rbyg[g].push_back({shape_.unpack(k), v});
            r.add_term(shape_.unpack(k), v);
        }
    }
    return r;
}

MSeries MSeries::sqrt() const {
    Rat c0 = constant_term();
    if (diagon::is_zero(c0)) throw domain_error("MSeries::sqrt: constant term zero");
    Int rn, rd;
    if (sgn(c0) < 0 || mpz_root(rn.get_mpz_t(), numerator(c0).get_mpz_t(), 2) == 0 ||
        mpz_root(rd.get_mpz_t(), denominator(c0).get_mpz_t(), 2) == 0)
        throw domain_error("MSeries::sqrt: constant term is not a rational square");
    Rat r0(rn, rd);
    r0.canonicalize();
    auto terms = sorted_by_grade();
    for (const auto& [k, v] : terms) {
        if (shape_.grade(shape_.unpack(k)) == 0 && k != shape_.pack(Expo{}))
            throw domain_error("MSeries::sqrt: grade-0 part is not constant");
    }
    // y_g = (f_g - sum_{0<i<g} y_i y_{g-i}) / (2 y_0), bucketed by grade
    int G = shape_.max_grade();
    std::vector<std::vector<std::pair<Expo, Rat>>> f(G + 1), y(G + 1);
    for (const auto& [k, v] : terms) {
        Expo e = shape_.unpack(k);
        f[shape_.grade(e)].push_back({e, v});
    }
    y[0].push_back({Expo{}, r0});
    MSeries out(shape_);
    out.add_term(Expo{}, r0);
    Rat half = Rat(1, 2) / r0;
    for (int g = 1; g <= G; ++g) {
        std::unordered_map<std::uint64_t, Rat> acc;
        for (const auto& [e, v] : f[g]) acc[shape_.pack(e)] = v;
        for (int i = 1; i < g; ++i) {
            for (const auto& [ea, va] : y[i])
                for (const auto& [eb, vb] : y[g - i]) {
                    Expo e;
                    bool ok = true;
                    for (int v = 0; v < shape_.nvars; ++v) {
                        e[v] = ea[v] + eb[v];
                        if (e[v] > shape_.bound[v] || e[v] < shape_.low(v)) { ok = false; break; }
                    }
                    if (!ok) continue;
                    auto [it, fresh] = acc.try_emplace(shape_.pack(e), -va * vb);
                    if (!fresh) it->second -= va * vb;
                }
        }
        for (auto& [k, v] : acc) {
            if (diagon::is_zero(v)) continue;
            v *= half;
            y[g].push_back({shape_.unpack(k), v});
            out.add_term(shape_.unpack(k), v);
        }
    }
    return out;
}

MSeries MSeries::nth_root(long q) const {
    if (q < 1) throw domain_error("MSeries::nth_root: q < 1");
    if (q == 1) return *this;
    if (q == 2) return sqrt();
    if (shape_.laurent_var >= 0)
        throw domain_error("MSeries::nth_root: general roots unsupported with a Laurent variable");
    Rat c0 = constant_term();
    Int rn, rd;
    if ((sgn(c0) < 0 && q % 2 == 0) || diagon::is_zero(c0) ||
        mpz_root(rn.get_mpz_t(), numerator(c0).get_mpz_t(), q) == 0 ||
        mpz_root(rd.get_mpz_t(), denominator(c0).get_mpz_t(), q) == 0)
        throw domain_error("MSeries::nth_root: constant term is not a perfect q-th power of a rational");
    Rat r0(rn, rd);
    r0.canonicalize();
    // Newton on y^q = f, doubling the trusted grade each pass
    int G = shape_.max_grade();
    MSeries y = constant(shape_, r0);
    Rat iq = Rat(1, q);
    int good = 0;
    while (good < G) {
        good = std::min(2 * good + 1, G);
        MSeries yq = y.pow_int(q - 1).truncate_grade(good);
        MSeries err = (yq * y - *this).truncate_grade(good);
        MSeries corr = err * (yq * Rat(q)).invert();
        y = (y - corr.truncate_grade(good)).truncate_grade(good);
    }
    return y;
}

MSeries MSeries::truncate_grade(int g) const {
    MSeries r(shape_);
    for (const auto& [k, v] : m_) {
        Expo e = shape_.unpack(k);
        if (shape_.grade(e) <= g) r.m_.emplace(k, v);
    }
    return r;
}

MSeries MSeries::subs_zero(int v) const {
    MSeries r(shape_);
    for (const auto& [k, c] : m_) {
        Expo e = shape_.unpack(k);
        if (e[v] == 0) r.m_.emplace(k, c);
    }
    return r;
}

USeries MSeries::diagonal(int trunc) const {
    int mmax = trunc;
    for (int v = 0; v < shape_.nvars; ++v) mmax = std::min(mmax, shape_.bound[v]);
    USeries out(trunc);
    for (int m = 0; m <= mmax; ++m) {
        Expo e;
        for (int v = 0; v < shape_.nvars; ++v) e[v] = m;
        out.at(m) = coeff(e);
    }
    if (mmax < trunc)
        throw domain_error("MSeries::diagonal: truncation exceeds per-variable bounds");
    return out;
}

USeries MSeries::to_useries(int trunc) const {
    if (shape_.nvars != 1) throw domain_error("MSeries::to_useries: not univariate");
    USeries out(trunc);
    for (const auto& [k, v] : m_) {
        Expo e = shape_.unpack(k);
        if (e[0] >= 0 && e[0] <= trunc) out.at(e[0]) = v;
    }
    return out;
}

void MSeries::for_each(const std::function<void(const Expo&, const Rat&)>& f) const {
    for (const auto& [k, v] : m_) f(shape_.unpack(k), v);
}

std::string MSeries::str(int max_terms) const {
    auto terms = sorted_by_grade();
    std::ostringstream os;
    int shown = 0;
    for (const auto& [k, v] : terms) {
        if (shown++ >= max_terms) {
            os << " + ...";
            break;
        }
        if (shown > 1) os << " + ";
        os << rat_to_string(v);
        Expo e = shape_.unpack(k);
        for (int vi = 0; vi < shape_.nvars; ++vi)
            if (e[vi] != 0) os << "*z" << vi << "^" << e[vi];
    }
    if (shown == 0) os << "0";
    return os.str();
}

}  // namespace diagon

#include "diagon/modp.hpp"

#include <sstream>

namespace diagon {

FpSeries reduce_mod_p(const USeries& f, std::uint64_t p) {
    FpCtx F(p);
    FpSeries s;
    s.p = p;
    s.coeffs.resize(f.trunc() + 1);
    for (int n = 0; n <= f.trunc(); ++n) {
        if (F.reduce_int(denominator(f[n])) == 0)
            throw domain_error("reduce_mod_p: p divides denominator at index " + std::to_string(n));
        s.coeffs[n] = F.reduce_rat(f[n]);
    }
    return s;
}

namespace {

std::vector<std::uint64_t> fp_mul_trunc(const FpCtx& F, const std::vector<std::uint64_t>& a,
                                        const std::vector<std::uint64_t>& b, int t) {
    std::vector<std::uint64_t> r(t + 1, 0);
    for (int i = 0; i <= t && i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= t && j < static_cast<int>(b.size()); ++j) {
            if (b[j] == 0) continue;
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
        }
    }
    return r;
}

}  // namespace

bool verify_relation(const AlgRelation& rel, const FpSeries& f) {
    FpCtx F(rel.p);
    int t = f.trunc();
    std::vector<std::uint64_t> acc(t + 1, 0), fj(t + 1, 0);
    fj[0] = 1;
    for (int j = 0; j <= rel.dy; ++j) {
        for (int i = 0; i <= rel.dx; ++i) {
            std::uint64_t c = rel.coeff[j][i];
            if (c == 0) continue;
            for (int s = 0; i + s <= t; ++s) acc[i + s] = F.add(acc[i + s], F.mul(c, fj[s]));
        }
        if (j < rel.dy) fj = fp_mul_trunc(F, fj, f.coeffs, t);
    }
    for (auto c : acc)
        if (c != 0) return false;
    return true;
}

std::optional<AlgRelation> minpoly_mod_p(const FpSeries& f, int dx, int dy, int guard) {
    int T = f.trunc();
    if (T < (dx + 1) * (dy + 1) + guard)
        throw domain_error("minpoly_mod_p: insufficient truncation for the requested bounds");
    FpCtx F(f.p);
    int teq = T - guard;  // rows used for the kernel; the rest re-verifies

    // powers of f up to dy
    std::vector<std::vector<std::uint64_t>> fpow(dy + 1);
    fpow[0].assign(T + 1, 0);
    fpow[0][0] = 1;
    for (int j = 1; j <= dy; ++j) fpow[j] = fp_mul_trunc(F, fpow[j - 1], f.coeffs, T);

    for (int by = 1; by <= dy; ++by) {
        for (int bx = 0; bx <= dx; ++bx) {
            std::size_t ncols = static_cast<std::size_t>(by + 1) * (bx + 1);
            if (static_cast<std::size_t>(teq + 1) < ncols) continue;
            // column order: (j, i) lexicographic
            std::vector<std::vector<std::uint64_t>> rows(
                teq + 1, std::vector<std::uint64_t>(ncols, 0));
            std::size_t col = 0;
            for (int j = 0; j <= by; ++j)
                for (int i = 0; i <= bx; ++i, ++col)
                    for (int s = 0; i + s <= teq; ++s) rows[i + s][col] = fpow[j][s];
            auto kernel = fp_nullspace(F, std::move(rows), ncols);
            for (const auto& kv : kernel) {
                const auto& vec = kv.entries;
                AlgRelation rel;
                rel.p = f.p;
                rel.dx = bx;
                rel.dy = by;
                rel.guard = guard;
                rel.coeff.assign(by + 1, std::vector<std::uint64_t>(bx + 1, 0));
                col = 0;
                for (int j = 0; j <= by; ++j)
                    for (int i = 0; i <= bx; ++i, ++col) rel.coeff[j][i] = vec[col];
                // require a genuine y-dependence of the top requested degree
                bool top = false;
                for (int i = 0; i <= bx; ++i) top |= rel.coeff[by][i] != 0;
                if (!top) continue;
                // monic in the fixed (y-degree, then x-degree) term order
                std::uint64_t lead = 0;
                for (int i = bx; i >= 0; --i)
                    if (rel.coeff[by][i]) {
                        lead = rel.coeff[by][i];
                        break;
                    }
                std::uint64_t inv = F.inv(lead);
                for (auto& row : rel.coeff)
                    for (auto& c : row) c = F.mul(c, inv);
                if (verify_relation(rel, f)) return rel;
            }
        }
    }
    return std::nullopt;
}

std::vector<std::uint64_t> hasse_poly(std::uint64_t p) {
    if (p == 2 || !is_probable_prime(Int(static_cast<unsigned long>(p))))
        throw domain_error("hasse_poly: p must be an odd prime");
    FpCtx F(p);
    // C(p - 1/2, n) = C((p-1)/2, n) mod p after reducing the half-integer
    std::uint64_t m = (p - 1) / 2;
    std::vector<std::uint64_t> out(m + 1, 0);
    std::uint64_t b = 1;  // C(m, 0)
    std::uint64_t pw16 = 1;
    for (std::uint64_t n = 0; n <= m; ++n) {
        out[n] = F.mul(F.mul(b, b), pw16);
        if (n < m) {
            b = F.mul(b, F.mul((m - n) % p, F.inv((n + 1) % p)));
            pw16 = F.mul(pw16, 16 % p);
        }
    }
    return out;
}

std::string AlgRelation::str() const {
    std::ostringstream os;
    bool first = true;
    for (int j = dy; j >= 0; --j) {
        std::ostringstream pt;
        bool any = false, multi = false;
        int nterms = 0;
        for (int i = 0; i <= dx; ++i)
            if (coeff[j][i]) ++nterms;
        if (nterms == 0) continue;
        multi = nterms > 1;
        for (int i = 0; i <= dx; ++i) {
            if (!coeff[j][i]) continue;
            if (any) pt << " + ";
            if (coeff[j][i] != 1 || i == 0) pt << coeff[j][i];
            if (i > 0) {
                if (coeff[j][i] != 1) pt << "*";
                pt << "x";
                if (i > 1) pt << "^" << i;
            }
            any = true;
        }
        if (!first) os << " + ";
        if (j == 0) {
            os << pt.str();
        } else {
            os << (multi ? "(" + pt.str() + ")" : pt.str());
            os << "*y";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    if (first) os << "0";
    os << "  (mod " << p << ")";
    return os.str();
}

}  // namespace diagon

#include "diagon/rational.hpp"

namespace diagon {

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal", 0);
    Rat q;
    if (q.set_str(s, 10) != 0) throw parse_error("bad rational literal '" + s + "'", 0);
    q.canonicalize();
    if (denominator(q) <= 0) throw domain_error("nonpositive denominator in '" + s + "'");
    return q;
}

std::string rat_to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).get_str();
    return numerator(q).get_str() + "/" + denominator(q).get_str();
}

long valuation(Int n, const Int& p) {
    if (n == 0) throw domain_error("valuation of zero");
    n = abs(n);
    long v = 0;
    Int r, quo;
    while (true) {
        mpz_fdiv_qr(quo.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        n = quo;
        ++v;
    }
    return v;
}

Int binomial(const Int& n, const Int& k) {
    if (k < 0) return 0;
    if (n >= 0 && k > n) return 0;
    Int num = 1, den = 1;
    for (Int i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Rat pow_rat(const Rat& b, long e) {
    if (e == 0) return 1;
    if (b == 0 && e < 0) throw domain_error("zero to negative power");
    Rat r;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
    if (e < 0) r = 1 / r;
    r.canonicalize();
    return r;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<std::pair<Int, long>> factor_partial(Int n, unsigned long bound,
                                                 std::optional<Int>* opaque) {
    std::vector<std::pair<Int, long>> out;
    if (opaque) opaque->reset();
    n = abs(n);
    if (n <= 1) return out;
    auto strip = [&](const Int& p) {
        long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (unsigned long d = 3; d <= bound && n > 1; d += 2) {
        Int dd(static_cast<long>(d));
        if (dd * dd > n) break;
        strip(dd);
    }
    if (n > 1) {
        if (is_probable_prime(n)) {
            out.emplace_back(n, 1);
        } else if (opaque) {
            *opaque = n;
        } else {
            out.emplace_back(n, 1);  // caller opted out of the distinction
        }
    }
    return out;
}

}  // namespace diagon

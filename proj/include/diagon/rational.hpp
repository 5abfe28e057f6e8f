#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diagon {

using Int = mpz_class;
using Rat = mpq_class;

struct parse_error : std::runtime_error {
    std::size_t pos;
    parse_error(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a/b" or "a" with optional sign; decimal digits only.
Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }

inline Int numerator(const Rat& q) { return q.get_num(); }
inline Int denominator(const Rat& q) { return q.get_den(); }

// p-adic valuation of a nonzero integer.
long valuation(Int n, const Int& p);

Int binomial(const Int& n, const Int& k);
Int factorial(unsigned long n);
Int pow_int(const Int& b, unsigned long e);
Rat pow_rat(const Rat& b, long e);

bool is_probable_prime(const Int& n);

// Trial division up to `bound`, then strips probable-prime cofactor.
// Returns (prime, exponent) pairs; a leftover composite cofactor (if any)
// is reported through `opaque`.
std::vector<std::pair<Int, long>> factor_partial(Int n, unsigned long bound,
                                                 std::optional<Int>* opaque);

}  // namespace diagon

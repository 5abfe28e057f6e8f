#pragma once

#include <cstdint>
#include <vector>

#include "diagon/rational.hpp"
#include "diagon/useries.hpp"

namespace diagon {

// Arithmetic mod an odd prime p < 2^62.
struct FpCtx {
    std::uint64_t p;
    explicit FpCtx(std::uint64_t prime);
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t reduce_int(const Int& n) const;
    // throws if p divides the denominator
    std::uint64_t reduce_rat(const Rat& q) const;
};

// Residue vector mod p.
struct FpVec {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> entries;
};

// Truncated series reduced mod p; constructed via reduce_mod_p which rejects
// denominators divisible by p.
struct FpSeries {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> coeffs;  // a_0..a_T
    int trunc() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Row-reduce `rows` (each of width `ncols`) in place mod p; returns a basis of
// the right kernel as residue vectors of length ncols. Deterministic:
// eliminates columns left to right.
std::vector<FpVec> fp_nullspace(const FpCtx& F,
                                std::vector<std::vector<std::uint64_t>> rows,
                                std::size_t ncols);

// Rank of the matrix mod p.
std::size_t fp_rank(const FpCtx& F, std::vector<std::vector<std::uint64_t>> rows);

}  // namespace diagon

#include "diagon/fp.hpp"

namespace diagon {

FpCtx::FpCtx(std::uint64_t prime) : p(prime) {
    if (p < 2 || p >> 62) throw domain_error("FpCtx: prime out of range");
}

std::uint64_t FpCtx::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t FpCtx::inv(std::uint64_t a) const {
    a %= p;
    if (a == 0) throw domain_error("FpCtx::inv(0)");
    return pow(a, p - 2);
}

std::uint64_t FpCtx::reduce_int(const Int& n) const {
    Int m = n % Int(static_cast<unsigned long>(p));
    if (m < 0) m += Int(static_cast<unsigned long>(p));
    return m.get_ui();
}

std::uint64_t FpCtx::reduce_rat(const Rat& q) const {
    std::uint64_t d = reduce_int(denominator(q));
    if (d == 0) throw domain_error("denominator divisible by p");
    return mul(reduce_int(numerator(q)), inv(d));
}

std::vector<FpVec> fp_nullspace(const FpCtx& F,
                                std::vector<std::vector<std::uint64_t>> rows,
                                std::size_t ncols) {
    std::vector<long> pivot_of_col(ncols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::uint64_t inv = F.inv(rows[rank][col]);
        for (std::size_t j = col; j < ncols; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            std::uint64_t f = rows[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<FpVec> kernel;
    for (std::size_t col = 0; col < ncols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        FpVec v{F.p, std::vector<std::uint64_t>(ncols, 0)};
        v.entries[col] = 1;
        for (std::size_t c = 0; c < col; ++c)
            if (pivot_of_col[c] >= 0)
                v.entries[c] = F.sub(0, rows[static_cast<std::size_t>(pivot_of_col[c])][col]);
        kernel.push_back(std::move(v));
    }
    return kernel;
}

std::size_t fp_rank(const FpCtx& F, std::vector<std::vector<std::uint64_t>> rows) {
    if (rows.empty()) return 0;
    std::size_t ncols = rows[0].size(), rank = 0;
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::uint64_t inv = F.inv(rows[rank][col]);
        for (std::size_t j = col; j < ncols; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            std::uint64_t f = rows[i][col];
            for (std::size_t j = col; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace diagon

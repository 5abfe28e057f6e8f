#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "diagon/rational.hpp"
#include "diagon/useries.hpp"

namespace diagon {

inline constexpr int kMaxVars = 12;

using Expo = std::array<int, kMaxVars>;

// Shared shape of a family of multivariate series: per-variable inclusive
// truncation bounds, plus at most one designated variable allowed to carry
// bounded negative exponents.
struct MShape {
    int nvars = 0;
    std::vector<int> bound;     // exponent of var v kept iff low(v) <= e <= bound[v]
    int laurent_var = -1;
    int laurent_low = 0;        // <= 0
    int bits = 0;               // per-variable key width

    MShape() = default;
    MShape(int n, std::vector<int> b, int lvar = -1, int llow = 0);
    int low(int v) const { return v == laurent_var ? laurent_low : 0; }
    bool operator==(const MShape& o) const {
        return nvars == o.nvars && bound == o.bound && laurent_var == o.laurent_var &&
               laurent_low == o.laurent_low;
    }
    std::uint64_t pack(const Expo& e) const;
    Expo unpack(std::uint64_t k) const;
    bool in_box(const Expo& e) const;
    // total degree over non-Laurent variables; the grading used for division
    int grade(const Expo& e) const;
    int max_grade() const;
};

// Sparse exact multivariate series over Q truncated to the shape's box.
class MSeries {
   public:
    MSeries() = default;
    explicit MSeries(MShape shape) : shape_(std::move(shape)) {}

    static MSeries constant(const MShape& s, const Rat& c);
    static MSeries variable(const MShape& s, int v);
    static MSeries monomial(const MShape& s, const Expo& e, const Rat& c);

    const MShape& shape() const { return shape_; }
    std::size_t term_count() const { return m_.size(); }
    Rat coeff(const Expo& e) const;
    void set_coeff(const Expo& e, const Rat& c);
    Rat constant_term() const;
    bool is_zero() const { return m_.empty(); }

    MSeries operator-() const;
    MSeries operator+(const MSeries& o) const;
    MSeries operator-(const MSeries& o) const;
    MSeries operator*(const MSeries& o) const;
    MSeries operator*(const Rat& s) const;
    bool operator==(const MSeries& o) const;

    MSeries pow_int(long e) const;
    // 1/this; the grade-0 part must reduce to a nonzero constant
    MSeries invert() const;
    // square root, constant term must be a rational square; grade-0 part constant
    MSeries sqrt() const;
    // q-th root, non-Laurent shapes only (Newton by grade doubling)
    MSeries nth_root(long q) const;

    MSeries truncate_grade(int g) const;
    MSeries subs_zero(int v) const;  // substitute variable v -> 0

    // coefficients with all exponents equal
    USeries diagonal(int trunc) const;
    // univariate image for nvars == 1
    USeries to_useries(int trunc) const;

    void for_each(const std::function<void(const Expo&, const Rat&)>& f) const;

    std::string str(int max_terms = 20) const;

   private:
    void add_term(const Expo& e, const Rat& c);
    std::vector<std::pair<std::uint64_t, Rat>> sorted_by_grade() const;
    MShape shape_;
    std::unordered_map<std::uint64_t, Rat> m_;
    friend MSeries mseries_div_graded(const MSeries& num, const MSeries& den);
};

}  // namespace diagon

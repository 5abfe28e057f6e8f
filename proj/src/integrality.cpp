#include "diagon/integrality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diagon/dfinite.hpp"

namespace diagon {

std::string IntegralityVerdict::describe() const {
    std::ostringstream os;
    switch (kind) {
        case IntegralityKind::GloballyBoundedWith:
            os << "globally bounded with N = " << rescale.get_str() << " (window " << window << ")";
            break;
        case IntegralityKind::LikelyNotGloballyBounded: {
            os << "likely not globally bounded; witness primes";
            for (const auto& p : witness_primes) os << " " << p.get_str();
            os << " (window " << window << ")";
            break;
        }
        case IntegralityKind::LogarithmicallyBounded:
            os << "logarithmically bounded (window " << window << ")";
            break;
        case IntegralityKind::Inconclusive:
            os << "inconclusive (window " << window << ")";
            break;
    }
    return os.str();
}

IntegralityVerdict find_rescaling(const USeries& f, const IntegralityOptions& opt) {
    IntegralityVerdict v;
    v.window = f.trunc();
    std::map<Int, PrimeProfile> prof;
    for (int n = 0; n <= f.trunc(); ++n) {
        Int den = denominator(f[n]);
        if (den == 1) continue;
        std::optional<Int> opaque;
        auto fac = factor_partial(den, opt.trial_division_bound, &opaque);
        if (opaque) v.opaque_cofactors.push_back(*opaque);
        for (const auto& [p, e] : fac) {
            auto& pr = prof[p];
            if (pr.valuations.empty()) {
                pr.p = p;
                pr.first_index = n;
            }
            pr.valuations.emplace_back(n, e);
            if (n >= 1) {
                long per = (e + n - 1) / n;  // ceil(e/n)
                pr.max_exponent_per_index = std::max(pr.max_exponent_per_index, per);
            } else {
                // a rational constant term cannot be fixed by rescaling x
                pr.max_exponent_per_index = std::max(pr.max_exponent_per_index, long(1) << 20);
            }
        }
    }
    for (auto& [p, pr] : prof) v.profile.push_back(pr);

    long limit = (f.trunc() + opt.prime_count_divisor - 1) / opt.prime_count_divisor;
    bool too_many = static_cast<long>(prof.size()) > std::max<long>(limit, 1);
    // a prime entering late in the window signals an infinite prime family
    bool late_prime = false;
    for (const auto& pr : v.profile)
        if (pr.first_index > f.trunc() / 2 && pr.p > f.trunc()) late_prime = true;

    if (!v.opaque_cofactors.empty() || too_many || late_prime) {
        v.kind = IntegralityKind::LikelyNotGloballyBounded;
        for (const auto& pr : v.profile) {
            v.witness_primes.push_back(pr.p);
            v.witness_indices.push_back(pr.first_index);
        }
        return v;
    }
    v.kind = IntegralityKind::GloballyBoundedWith;
    v.rescale = 1;
    for (const auto& pr : v.profile) {
        if (pr.max_exponent_per_index >= (long(1) << 20)) {
            v.kind = IntegralityKind::Inconclusive;  // rational constant term
            return v;
        }
        v.rescale *= pow_int(pr.p, pr.max_exponent_per_index);
    }
    return v;
}

std::vector<std::pair<Int, bool>> log_bounded_check(const USeries& f, const std::vector<Int>& primes,
                                                    long slack) {
    std::vector<std::pair<Int, bool>> out;
    for (const auto& p : primes) {
        bool ok = true;
        for (int n = 1; n <= f.trunc() && ok; ++n) {
            Int den = denominator(f[n]);
            if (den == 1) continue;
            long vp = valuation(den, p);
            if (vp == 0) continue;
            long logp = 0;
            Int pk = p;
            while (pk <= n) {
                ++logp;
                pk *= p;
            }
            if (vp > logp + slack) ok = false;
        }
        out.emplace_back(p, ok);
    }
    return out;
}

std::pair<USeries, IntegralityVerdict> apply_then_check(const LinDiffOp& L, const USeries& f,
                                                        const IntegralityOptions& opt) {
    if (L.order() > 1) throw domain_error("apply_then_check: operator order must be <= 1");
    USeries g = apply_op(L, f);
    return {g, find_rescaling(g, opt)};
}

}  // namespace diagon

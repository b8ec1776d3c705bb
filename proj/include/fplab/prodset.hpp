#pragma once

// Product sets HM = {hm} and ratio sets M/H = {m/h}, with the size
// hypotheses under which HM is expected to cover all but O(p^{1-eta}) of F_p.

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/sets.hpp"

namespace fplab {

inline constexpr double kDefaultEpsilon = 0.05;

enum class CoverageBranch {
    LongInterval,   // H >= p^{2/3}, HM >= p^{1+eps}
    ShortInterval,  // H < p^{2/3}, M >= p^{1/3}, H M^{1/4} >= p^{3/4+eps}
    Neither,
};

inline const char* to_string(CoverageBranch b) {
    switch (b) {
        case CoverageBranch::LongInterval: return "A";
        case CoverageBranch::ShortInterval: return "B";
        case CoverageBranch::Neither: return "none";
    }
    return "?";
}

struct CoverageHypothesis {
    CoverageBranch branch = CoverageBranch::Neither;
    /// log_p of the branch's left-hand side minus its required exponent;
    /// nonnegative iff the eps-inequality of that branch holds.
    double margin_long = 0;
    double margin_short = 0;
};

/// Evaluates which (if any) coverage branch holds. H >= p^{2/3} and
/// M >= p^{1/3} are decided exactly in integers.
inline CoverageHypothesis coverage_hypothesis(u64 h_len, u64 m_len, u64 p, double epsilon) {
    CoverageHypothesis out;
    const double lp = std::log(static_cast<double>(p));
    const double lh = std::log(static_cast<double>(h_len));
    const double lm = std::log(static_cast<double>(m_len));
    const auto cube = [](u64 v) { return static_cast<u128>(v) * v * v; };
    const bool long_interval = cube(h_len) >= static_cast<u128>(p) * p;
    const bool big_set = cube(m_len) >= p;
    out.margin_long = (lh + lm) / lp - (1.0 + epsilon);
    out.margin_short = (lh + 0.25 * lm) / lp - (0.75 + epsilon);
    if (long_interval && out.margin_long >= 0) {
        out.branch = CoverageBranch::LongInterval;
    } else if (!long_interval && big_set && out.margin_short >= 0) {
        out.branch = CoverageBranch::ShortInterval;
    }
    return out;
}

struct ProductSetReport {
    u64 p = 0;
    u64 h_len = 0;
    u64 m_len = 0;
    u64 size = 0;     // #(HM)
    u64 missing = 0;  // p - #(HM)
    double epsilon = kDefaultEpsilon;
    CoverageHypothesis hypothesis;
    std::vector<u64> missing_residues;  // filled only on request
};

/// Upper p for which the explicit list of missing residues may be requested.
inline constexpr u64 kMissingListMaxPrime = u64{1} << 20;

namespace detail {

class BitTable {
public:
    explicit BitTable(u64 n) : words_((n + 63) / 64, 0), n_(n) {}
    void set(u64 i) noexcept { words_[i >> 6] |= u64{1} << (i & 63); }
    bool test(u64 i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
    u64 count() const noexcept {
        u64 c = 0;
        for (u64 w : words_) c += static_cast<u64>(std::popcount(w));
        return c;
    }
    u64 size() const noexcept { return n_; }

private:
    std::vector<u64> words_;
    u64 n_;
};

inline ProductSetReport mark_products(std::span<const u64> left, const ResidueSet& set, const PrimeContext& ctx,
                                      double epsilon, bool collect_missing) {
    const u64 p = ctx.p();
    BitTable occupied(p);
    for (u64 m : set) {
        for (u64 h : left) occupied.set(ctx.mul(h, m));
    }
    ProductSetReport r;
    r.p = p;
    r.h_len = left.size();
    r.m_len = set.size();
    r.size = occupied.count();
    r.missing = p - r.size;
    r.epsilon = epsilon;
    r.hypothesis = coverage_hypothesis(r.h_len, r.m_len, p, epsilon);
    if (collect_missing) {
        if (p > kMissingListMaxPrime) {
            throw BudgetExceeded("missing-residue list requested for p above " + std::to_string(kMissingListMaxPrime),
                                 static_cast<long double>(p), static_cast<long double>(kMissingListMaxPrime));
        }
        for (u64 v = 0; v < p; ++v) {
            if (!occupied.test(v)) r.missing_residues.push_back(v);
        }
    }
    return r;
}

}  // namespace detail

/// #{hm : h in interval, m in set} by marking a p-bit occupancy table.
inline ProductSetReport product_set(const Interval& interval, const ResidueSet& set, const PrimeContext& ctx,
                                    double epsilon = kDefaultEpsilon, const Budget& budget = {},
                                    bool collect_missing = false) {
    require_budget(static_cast<long double>(interval.length()) * set.size(), budget, "product_set");
    const auto left = interval.elements();
    return detail::mark_products(left, set, ctx, epsilon, collect_missing);
}

/// #{m/h}: inverts the interval in one batch and reuses the product marking.
inline ProductSetReport ratio_set(const Interval& interval, const ResidueSet& set, const PrimeContext& ctx,
                                  double epsilon = kDefaultEpsilon, const Budget& budget = {},
                                  bool collect_missing = false) {
    if (interval.contains_zero()) throw DomainError("ratio_set: interval contains 0 mod p");
    require_budget(static_cast<long double>(interval.length()) * set.size(), budget, "ratio_set");
    const auto elems = interval.elements();
    const auto inverses = batch_inverse(elems, ctx);
    return detail::mark_products(inverses, set, ctx, epsilon, collect_missing);
}

}  // namespace fplab

#pragma once

/**
 * @file energy.hpp
 * @brief Exact coincidence counts for products, reciprocal powers and
 *        triple products over F_p.
 *
 * Every count here has the form sum_r c(r)^2 for the count vector c of a
 * map, which is exact in O(work + p) instead of enumerating pairs of tuples:
 *
 *   J(L,H,M)     c(r) = #{(m,x) : m x = r},        x in L+H
 *   J_s(L,H,M)   c(r) = #{(m,x) : m x^{-s} = r}
 *   R(J,K,M)     c(r) = #{(j,k,m) : j k m = r}
 *   J_{l,s}(X)   c = u * ... * u (l-fold, additive), u(r) = #{x : x^{-s} = r}
 *
 * The bound envelopes reported next to the counts set every p^{o(1)} factor
 * to 1. The displayed long-interval term of the product-energy bound,
 * "H^2M^2/p^{-1}", is read as H^2 M^2 / p.
 */

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fplab/convolve.hpp"
#include "fplab/count_vector.hpp"
#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/sets.hpp"

namespace fplab {

/// x^{-s} for every x in the interval. For s > 0 the interval must avoid 0;
/// for s < 0 the map is x^{|s|} and 0 maps to 0.
inline std::vector<u64> reciprocal_powers(const Interval& xs, i64 s, const PrimeContext& ctx) {
    if (s == 0) throw DomainError("exponent s must be nonzero");
    auto elems = xs.elements();
    if (s > 0) {
        if (xs.contains_zero()) {
            throw DomainError("interval {L+1..L+H} with L=" + std::to_string(xs.shift()) +
                              " contains 0 mod p; x^{-s} undefined");
        }
        elems = batch_inverse(elems, ctx);
    }
    const u64 e = s > 0 ? static_cast<u64>(s) : static_cast<u64>(-(s + 1)) + 1;
    if (e != 1) {
        for (auto& v : elems) v = pow_mod_u(v, e, ctx.p());
    }
    return elems;
}

/// counts[r] = #{(m, x) in set x interval : m x^{-s} = r (mod p)}.
inline CountVector count_vector_product(const Interval& xs, const ResidueSet& set, i64 s, const PrimeContext& ctx,
                                        const Budget& budget = {}) {
    require_budget(static_cast<long double>(xs.length()) * set.size(), budget, "count_vector_product");
    const auto ys = reciprocal_powers(xs, s, ctx);
    CountVector c(ctx.p());
    for (u64 m : set) {
        for (u64 y : ys) ++c[ctx.mul(m, y)];
    }
    return c;
}

/// u[r] = #{x in interval : x^{-s} = r}.
inline CountVector count_vector_powers(const Interval& xs, i64 s, const PrimeContext& ctx) {
    CountVector u(ctx.p());
    for (u64 y : reciprocal_powers(xs, s, ctx)) ++u[y];
    return u;
}

namespace detail {

inline void require_square_fits(long double pairs, const char* op) {
    // sum c(r)^2 <= pairs^2 must stay below 2^127
    if (pairs >= 13043817825332782212.0L) {  // floor(2^63.5)
        throw BudgetExceeded(std::string(op) + ": squared count would exceed 2^127", pairs,
                             13043817825332782212.0L);
    }
}

}  // namespace detail

/// J_s(L,H,M): solutions of m1 x1^{-s} = m2 x2^{-s}. With s = -1 this is
/// J(L,H,M), the product-coincidence count, and 0 in the interval is allowed.
inline u128 energy_Js(const Interval& xs, const ResidueSet& set, i64 s, const PrimeContext& ctx,
                      const Budget& budget = {}) {
    detail::require_square_fits(static_cast<long double>(xs.length()) * set.size(), "energy_Js");
    return count_vector_product(xs, set, s, ctx, budget).sum_of_squares();
}

/// J(L,H,M): solutions of (L+h1) m1 = (L+h2) m2.
inline u128 energy_JL(const Interval& xs, const ResidueSet& set, const PrimeContext& ctx, const Budget& budget = {}) {
    return energy_Js(xs, set, -1, ctx, budget);
}

/// J(H,M) for an initial interval {1..H}.
inline u128 energy_J(const Interval& hs, const ResidueSet& set, const PrimeContext& ctx, const Budget& budget = {}) {
    if (!hs.is_initial()) throw DomainError("energy_J: interval must be initial (L = 0)");
    return energy_JL(hs, set, ctx, budget);
}

enum class EnergyBranch { LongInterval, ShortIntervalLargeSet, ShortIntervalSmallSet };

struct EnergyEnvelope {
    EnergyBranch branch;
    double value;  // o(1) = 0, implied constant 1
};

/// Upper-bound shape for J(H,M) and J_s(L,H,M):
///   H >= p^{2/3}:               H^2M^2/p + HM
///   H <  p^{2/3}, M >= p^{1/3}: H^2M^2/p + H M^{7/4} p^{-1/4} + M^2
///   otherwise:                  HM + M^2
inline EnergyEnvelope energy_envelope(u64 h_len, u64 m_len, u64 p) {
    const double H = static_cast<double>(h_len);
    const double M = static_cast<double>(m_len);
    const double P = static_cast<double>(p);
    const auto cube = [](u64 v) { return static_cast<u128>(v) * v * v; };
    if (cube(h_len) >= static_cast<u128>(p) * p) {
        return {EnergyBranch::LongInterval, H * H * M * M / P + H * M};
    }
    if (cube(m_len) >= p) {
        return {EnergyBranch::ShortIntervalLargeSet,
                H * H * M * M / P + H * std::pow(M, 1.75) * std::pow(P, -0.25) + M * M};
    }
    return {EnergyBranch::ShortIntervalSmallSet, H * M + M * M};
}

/// Right-hand side of J(L,H,M) <= 2 J(H,M) + M^2.
inline u128 sliding_bound(u128 initial_energy, u64 m_len) {
    return 2 * initial_energy + static_cast<u128>(m_len) * m_len;
}

struct TripleReport {
    u128 value = 0;          // R(J,K,M)
    long double main_term = 0;  // J^2 K^2 M^2 / (p-1)
};

/// R(J,K,M) = #{j1 k1 m1 = j2 k2 m2} for initial intervals {1..J}, {1..K}.
/// The product distribution is built in discrete-log coordinates, where
/// multiplication in F_p^* becomes addition in Z_{p-1}, and convolved exactly.
inline TripleReport triple_R(u64 j_len, u64 k_len, const ResidueSet& set, const PrimeContext& ctx,
                             const Budget& budget = {}) {
    const u64 p = ctx.p();
    if (j_len < 1 || j_len > p - 1 || k_len < 1 || k_len > p - 1) {
        throw DomainError("triple_R: interval lengths must lie in [1, p-1]");
    }
    const long double triples = static_cast<long double>(j_len) * k_len * set.size();
    require_budget(triples, budget, "triple_R");
    detail::require_square_fits(triples, "triple_R");
    const auto dl = ctx.dlog_table();
    CountVector jk(p - 1);
    for (u64 j = 1; j <= j_len; ++j) {
        for (u64 k = 1; k <= k_len; ++k) ++jk[dl[ctx.mul(j, k)]];
    }
    CountVector ms(p - 1);
    for (u64 m : set) ++ms[dl[m]];
    const auto d = cyclic_convolve(jk, ms);
    TripleReport r;
    r.value = d.sum_of_squares();
    const long double JKM = triples;
    r.main_term = JKM * JKM / static_cast<long double>(p - 1);
    return r;
}

struct AdditiveEnergyReport {
    u128 value = 0;         // J_{l,s}(X)
    double envelope = 0;    // H^{2l^2/(l+1)} + H^{2l}/p
    ConvolutionStrategy strategy = ConvolutionStrategy::Direct;
};

inline double additive_energy_envelope(u64 h_len, unsigned ell, u64 p) {
    const double H = static_cast<double>(h_len);
    const double l = ell;
    return std::pow(H, 2 * l * l / (l + 1)) + std::pow(H, 2 * l) / static_cast<double>(p);
}

/// J_{l,s}(X): solutions of x1^{-s}+...+xl^{-s} = x_{l+1}^{-s}+...+x_{2l}^{-s}.
inline AdditiveEnergyReport additive_energy_recip(const Interval& xs, i64 s, unsigned ell, const PrimeContext& ctx,
                                                  const Budget& budget = {}) {
    if (ell < 1) throw DomainError("additive_energy_recip: ell must be >= 1");
    if (xs.contains_zero()) throw DomainError("additive_energy_recip: interval contains 0 mod p");
    const long double tuples = std::pow(static_cast<long double>(xs.length()), static_cast<long double>(ell));
    detail::require_square_fits(tuples, "additive_energy_recip");
    require_budget(static_cast<long double>(xs.length()) * ell + static_cast<long double>(ctx.p()) * ell, budget,
                   "additive_energy_recip");
    const auto u = count_vector_powers(xs, s, ctx);
    AdditiveEnergyReport r;
    r.envelope = additive_energy_envelope(xs.length(), ell, ctx.p());
    if (ell == 1) {
        r.value = u.sum_of_squares();
        return r;
    }
    const std::vector<CountVector> copies(ell, u);
    const auto plan = make_plan(copies);
    r.strategy = plan.strategy;
    r.value = k_fold_count(copies, plan).sum_of_squares();
    return r;
}

}  // namespace fplab

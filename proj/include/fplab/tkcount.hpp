#pragma once

/**
 * @file tkcount.hpp
 * @brief T_k(lambda): solutions of m_1/x_1^s + ... + m_k/x_k^s = lambda.
 *
 * m_i ranges over M_i and x_i over L_i + {1..H}. T_k is the k-fold cyclic
 * convolution of the per-factor count vectors. The report compares it with
 * the main term (prod_i H M_i) / p through
 *
 *   dev(lambda) = T_k(lambda) p / prod_i(H M_i) - 1,
 *
 * evaluated from exact integers, and records the three size conditions
 * H^{24/17} M^{11/17}, H^{9/5} M^{2/5}, H^{6/5} M > p^{1+eps}.
 *
 * k = 6 is the default; other k >= 2 are supported (k = 5 is exploratory).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fplab/convolve.hpp"
#include "fplab/count_vector.hpp"
#include "fplab/energy.hpp"
#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/sets.hpp"
#include "fplab/spectra.hpp"

namespace fplab {

inline constexpr unsigned kDefaultTupleSize = 6;

struct TkFactor {
    ResidueSet set;
    i64 shift = 0;  // L_i
};

struct TkHypothesis {
    // log_p(lhs) - (1 + eps) for each condition; the condition holds iff >= 0
    double margin_24_11 = 0;
    double margin_9_2 = 0;
    double margin_6_5 = 0;
    bool holds_24_11() const { return margin_24_11 > 0; }
    bool holds_9_2() const { return margin_9_2 > 0; }
    bool holds_6_5() const { return margin_6_5 > 0; }
    bool all() const { return holds_24_11() && holds_9_2() && holds_6_5(); }
};

inline TkHypothesis tk_hypothesis(u64 h_len, u64 m_len, u64 p, double epsilon) {
    const double lp = std::log(static_cast<double>(p));
    const double lh = std::log(static_cast<double>(h_len)) / lp;
    const double lm = std::log(static_cast<double>(m_len)) / lp;
    TkHypothesis h;
    h.margin_24_11 = 24.0 / 17.0 * lh + 11.0 / 17.0 * lm - (1.0 + epsilon);
    h.margin_9_2 = 9.0 / 5.0 * lh + 2.0 / 5.0 * lm - (1.0 + epsilon);
    h.margin_6_5 = 6.0 / 5.0 * lh + lm - (1.0 + epsilon);
    return h;
}

struct TkOptions {
    double epsilon = 0.05;
    bool allow_unequal_sets = false;  // off the equal-cardinality setting when true
    Budget budget{};
};

struct TkReport {
    unsigned k = 0;
    u64 p = 0;
    u64 h_len = 0;
    i64 s = 1;
    std::vector<TkFactor> factors;
    CountVector counts;      // T_k(lambda), lambda = 0..p-1
    u128 mass = 0;           // prod_i H M_i = sum_lambda T_k(lambda); main term = mass / p
    std::vector<double> dev;
    double max_abs_dev = 0;
    double mean_abs_dev = 0;
    i128 dev_numerator_sum = 0;  // sum_lambda (T p - mass); always 0
    bool equal_cardinalities = true;
    TkHypothesis hypothesis;
    ConvolutionStrategy strategy = ConvolutionStrategy::Direct;

    u64 m_len() const { return factors.empty() ? 0 : factors.front().set.size(); }
    long double main_term() const { return static_cast<long double>(mass) / static_cast<long double>(p); }
    double dev_at(u64 lambda) const { return dev.at(lambda % p); }
};

inline TkReport tk_experiment(unsigned k, std::vector<TkFactor> factors, u64 h_len, i64 s, const PrimeContext& ctx,
                              const TkOptions& options = {}) {
    if (k < 2) throw DomainError("tk_experiment: k must be >= 2");
    if (factors.size() != k) {
        throw DomainError("tk_experiment: expected " + std::to_string(k) + " factors, got " +
                          std::to_string(factors.size()));
    }
    const u64 p = ctx.p();
    TkReport r;
    r.k = k;
    r.p = p;
    r.h_len = h_len;
    r.s = s;
    for (const auto& f : factors) {
        if (f.set.size() != factors.front().set.size()) r.equal_cardinalities = false;
    }
    if (!r.equal_cardinalities && !options.allow_unequal_sets) {
        throw DomainError("tk_experiment: sets M_i have different cardinalities (enable allow_unequal_sets)");
    }
    std::vector<CountVector> vectors;
    vectors.reserve(k);
    for (const auto& f : factors) {
        const auto xs = shifted_interval(f.shift, h_len, ctx, s > 0);
        vectors.push_back(count_vector_product(xs, f.set, s, ctx, options.budget));
    }
    const auto plan = make_plan(vectors);
    r.strategy = plan.strategy;
    r.counts = k_fold_count(vectors, plan);
    r.mass = 1;
    u64 min_m = factors.front().set.size();
    for (const auto& f : factors) {
        r.mass *= static_cast<u128>(h_len) * f.set.size();
        min_m = std::min<u64>(min_m, f.set.size());
    }
    if (r.counts.total() != r.mass) throw std::logic_error("tk_experiment: sum of T_k differs from prod H M_i");

    // T p - mass = p (T - q) - rem with mass = q p + rem
    const u128 q = r.mass / p;
    const u128 rem = r.mass % p;
    const long double inv_mass = 1.0L / static_cast<long double>(r.mass);
    r.dev.resize(p);
    i128 diff_sum = 0;
    double abs_sum = 0;
    for (u64 lam = 0; lam < p; ++lam) {
        const i128 diff = static_cast<i128>(r.counts[lam]) - static_cast<i128>(q);
        diff_sum += diff;
        const long double num = static_cast<long double>(diff) * p - static_cast<long double>(rem);
        const double d = static_cast<double>(num * inv_mass);
        r.dev[lam] = d;
        r.max_abs_dev = std::max(r.max_abs_dev, std::abs(d));
        abs_sum += std::abs(d);
    }
    r.mean_abs_dev = abs_sum / static_cast<double>(p);
    r.dev_numerator_sum = diff_sum * static_cast<i128>(p) - static_cast<i128>(rem) * static_cast<i128>(p);
    if (r.dev_numerator_sum != 0) throw std::logic_error("tk_experiment: deviations do not average to zero");
    r.hypothesis = tk_hypothesis(h_len, min_m, p, options.epsilon);
    r.factors = std::move(factors);
    return r;
}

struct SpectralResidual {
    u64 lambda = 0;
    double spectral = 0;
    u128 exact = 0;
    double residual = 0;  // |spectral - exact|
};

/// Recomputes T_k(lambda) = (1/p) sum_a prod_i V_i(a) e_p(-a lambda) with
/// V_i(a) = sum_{m in M_i} W_i[a m] from complete-sum tables, and compares
/// with the exact counts in `report`. Intended for p up to about 10^4.
inline std::vector<SpectralResidual> tk_spectral_check(const TkReport& report, std::span<const u64> lambdas,
                                                       const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (report.p != p) throw DomainError("tk_spectral_check: report built for a different p");
    std::vector<cplx> product(p, 1.0);
    for (const auto& f : report.factors) {
        const auto xs = shifted_interval(f.shift, report.h_len, ctx, report.s > 0);
        const auto table = complete_sum_table(xs, report.s, ctx);
        for (u64 a = 0; a < p; ++a) {
            cplx v = 0;
            for (u64 m : f.set) v += table[ctx.mul(a, m)];
            product[a] *= v;
        }
    }
    const auto phases = ctx.phases();
    std::vector<SpectralResidual> out;
    out.reserve(lambdas.size());
    for (u64 lam : lambdas) {
        lam %= p;
        cplx acc = 0;
        for (u64 a = 0; a < p; ++a) {
            const u64 idx = (p - ctx.mul(a, lam)) % p;  // e_p(-a lambda)
            acc += product[a] * phases[idx];
        }
        SpectralResidual sr;
        sr.lambda = lam;
        sr.spectral = acc.real() / static_cast<double>(p);
        sr.exact = report.counts[lam];
        sr.residual = std::abs(sr.spectral - static_cast<double>(sr.exact));
        out.push_back(sr);
    }
    return out;
}

}  // namespace fplab

#pragma once

/**
 * @file spectra.hpp
 * @brief Additive and multiplicative character sums over F_p.
 *
 * Complete sums W(c) = sum_{x in X} e_p(c x^{-s}) for all c at once are the
 * length-p transform of u(r) = #{x : x^{-s} = r}. Multiplicative character
 * sums S_U(chi_t) = sum_{u in U} exp(2 pi i t dlog(u) / (p-1)) for all t are
 * the length-(p-1) transform of the indicator of U in discrete-log
 * coordinates.
 *
 * All of this is double precision. A sum of at most p unit phases carries an
 * absolute error of roughly p * 2^-53 * log p per entry, well below 1e-6 at
 * desk scale. Values known to be exact integers (W[0], S[0], the complete
 * character sums of F_p^*) are set exactly.
 *
 * Envelopes set every p^{o(1)} factor to 1; their only use is as the
 * denominator of an observed/envelope ratio.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fplab/count_vector.hpp"
#include "fplab/energy.hpp"
#include "fplab/error.hpp"
#include "fplab/modfield.hpp"
#include "fplab/sets.hpp"
#include "fplab/transform.hpp"

namespace fplab {

struct CompleteSumTable {
    std::vector<cplx> values;  // W[c], c = 0..p-1
    Interval xs;
    i64 s;

    cplx operator[](u64 c) const { return values[c]; }
    std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

inline CompleteSumTable table_from_weights(std::vector<cplx> weights, const Interval& xs, i64 s, cplx total) {
    auto w = length_p_transform(weights);
    w[0] = total;
    return CompleteSumTable{std::move(w), xs, s};
}

}  // namespace detail

/// W[c] = sum_{x in X} e_p(c x^{-s}) for every c in Z_p.
inline CompleteSumTable complete_sum_table(const Interval& xs, i64 s, const PrimeContext& ctx) {
    if (xs.contains_zero()) throw DomainError("complete_sum_table: interval contains 0 mod p");
    const auto u = count_vector_powers(xs, s, ctx);
    std::vector<cplx> weights(ctx.p());
    for (u64 r = 0; r < ctx.p(); ++r) weights[r] = static_cast<double>(u[r]);
    return detail::table_from_weights(std::move(weights), xs, s, static_cast<double>(xs.length()));
}

/// W_beta[c] = sum_{x in X} beta_x e_p(c x^{-s}); beta indexed like xs.elements().
inline CompleteSumTable weighted_complete_sum_table(const Interval& xs, i64 s, std::span<const cplx> beta,
                                                    const PrimeContext& ctx) {
    if (xs.contains_zero()) throw DomainError("weighted_complete_sum_table: interval contains 0 mod p");
    if (beta.size() != xs.length()) throw DomainError("weighted_complete_sum_table: need one weight per x");
    const auto ys = reciprocal_powers(xs, s, ctx);
    std::vector<cplx> weights(ctx.p(), 0.0);
    cplx total = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        weights[ys[i]] += beta[i];
        total += beta[i];
    }
    return detail::table_from_weights(std::move(weights), xs, s, total);
}

/// sum_{x in X} e_p(c x^{-s}) evaluated term by term from the phase table.
inline cplx complete_sum_direct(const Interval& xs, i64 s, u64 c, const PrimeContext& ctx) {
    const auto phases = ctx.phases();
    cplx acc = 0;
    for (u64 y : reciprocal_powers(xs, s, ctx)) acc += phases[ctx.mul(c % ctx.p(), y)];
    return acc;
}

/// HM (p / (M H^{2l/(l+1)}) + 1/M)^{1/(2l)}.
inline double kloosterman_envelope(u64 h_len, u64 m_len, u64 p, unsigned ell) {
    const double H = static_cast<double>(h_len);
    const double M = static_cast<double>(m_len);
    const double l = ell;
    const double inner = static_cast<double>(p) / (M * std::pow(H, 2 * l / (l + 1))) + 1.0 / M;
    return H * M * std::pow(inner, 1.0 / (2 * l));
}

struct FracSumReport {
    double value = 0;     // S = sum_m |W[a m]|
    double envelope = 0;  // o(1) = 0
    double trivial_bound = 0;  // HM
    double ratio() const { return envelope > 0 ? value / envelope : 0.0; }
};

/// S = sum_{m in M} |sum_{x in X} e_p(a m x^{-s})| read off a precomputed table.
inline FracSumReport kloosterman_frac_sum(u64 a, const ResidueSet& set, const CompleteSumTable& table,
                                          const PrimeContext& ctx, unsigned ell = 2) {
    if (table.size() != ctx.p()) throw DomainError("kloosterman_frac_sum: table built for a different p");
    if (ell < 1) throw DomainError("kloosterman_frac_sum: ell must be >= 1");
    const u64 ar = a % ctx.p();
    FracSumReport r;
    for (u64 m : set) r.value += std::abs(table[ctx.mul(ar, m)]);
    if (ar == 0) r.value = static_cast<double>(table.xs.length()) * static_cast<double>(set.size());
    r.trivial_bound = static_cast<double>(table.xs.length()) * static_cast<double>(set.size());
    r.envelope = kloosterman_envelope(table.xs.length(), set.size(), ctx.p(), ell);
    return r;
}

inline FracSumReport kloosterman_frac_sum(u64 a, const ResidueSet& set, const Interval& xs, i64 s,
                                          const PrimeContext& ctx, unsigned ell = 2) {
    return kloosterman_frac_sum(a, set, complete_sum_table(xs, s, ctx), ctx, ell);
}

struct WeightedSumReport {
    cplx value = 0;
    double envelope = 0;
};

/// ||alpha||_{l/(l-1)} (the max norm when l = 1).
inline double alpha_norm(std::span<const cplx> alpha, unsigned ell) {
    if (ell == 1) {
        double mx = 0;
        for (const auto& a : alpha) mx = std::max(mx, std::abs(a));
        return mx;
    }
    const double q = static_cast<double>(ell) / (ell - 1);
    double acc = 0;
    for (const auto& a : alpha) acc += std::pow(std::abs(a), q);
    return std::pow(acc, 1.0 / q);
}

/// sum_m sum_x alpha_m beta_x e_p(a m x^{-s}) with |beta_x| <= 1, via the
/// beta-weighted complete-sum table. Envelope:
/// ||alpha||_{l/(l-1)} H M^{1/l} (p / (M H^{2l/(l+1)}) + 1/M)^{1/(2l)}.
inline WeightedSumReport weighted_frac_sum(std::span<const cplx> alpha, std::span<const cplx> beta, u64 a,
                                           const ResidueSet& set, const Interval& xs, i64 s,
                                           const PrimeContext& ctx, unsigned ell = 2) {
    if (alpha.size() != set.size()) throw DomainError("weighted_frac_sum: need one alpha per m");
    if (beta.size() != xs.length()) throw DomainError("weighted_frac_sum: need one beta per x");
    if (ell < 1) throw DomainError("weighted_frac_sum: ell must be >= 1");
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (std::abs(beta[i]) > 1.0 + 1e-12) {
            throw DomainError("weighted_frac_sum: |beta| > 1 at index " + std::to_string(i));
        }
    }
    const auto table = weighted_complete_sum_table(xs, s, beta, ctx);
    const u64 ar = a % ctx.p();
    WeightedSumReport r;
    std::size_t i = 0;
    for (u64 m : set) r.value += alpha[i++] * table[ctx.mul(ar, m)];
    const double H = static_cast<double>(xs.length());
    const double M = static_cast<double>(set.size());
    const double l = ell;
    const double inner = static_cast<double>(ctx.p()) / (M * std::pow(H, 2 * l / (l + 1))) + 1.0 / M;
    r.envelope = alpha_norm(alpha, ell) * H * std::pow(M, 1.0 / l) * std::pow(inner, 1.0 / (2 * l));
    return r;
}

struct CharSpectrum {
    std::vector<cplx> values;  // S[t], t = 0..p-2; t = 0 is the principal character
    u64 set_size = 0;

    cplx operator[](std::size_t t) const { return values[t]; }
    std::size_t size() const noexcept { return values.size(); }
};

/// S_U(chi_t) for every multiplicative character, chi_t(g^k) = exp(2 pi i t k/(p-1)).
inline CharSpectrum char_spectrum(std::span<const u64> elems, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    const auto dl = ctx.dlog_table();
    std::vector<cplx> indicator(p - 1, 0.0);
    for (u64 u : elems) {
        if (u % p == 0) throw DomainError("char_spectrum: 0 is not in F_p^*");
        if (u >= p) throw DomainError("char_spectrum: residue " + std::to_string(u) + " not reduced");
        indicator[dl[u]] += 1.0;
    }
    CharSpectrum out;
    out.set_size = elems.size();
    if (elems.size() == p - 1) {
        out.values.assign(p - 1, 0.0);
    } else {
        out.values = dft(indicator, +1);
    }
    out.values[0] = static_cast<double>(elems.size());
    return out;
}

inline CharSpectrum char_spectrum(const ResidueSet& set, const PrimeContext& ctx) {
    return char_spectrum(set.elements(), ctx);
}

inline CharSpectrum char_spectrum(const Interval& xs, const PrimeContext& ctx) {
    if (xs.contains_zero()) throw DomainError("char_spectrum: interval contains 0 mod p");
    return char_spectrum(xs.elements(), ctx);
}

/// sum_t |S[t]|^2; equals (p-1) #U for a set.
inline double spectrum_energy(const CharSpectrum& s) {
    double acc = 0;
    for (const auto& v : s.values) acc += std::norm(v);
    return acc;
}

/// sum_c |W[c]|^2; equals p * sum_r u(r)^2.
inline double spectrum_energy(const CompleteSumTable& t) {
    double acc = 0;
    for (const auto& v : t.values) acc += std::norm(v);
    return acc;
}

/// (1/(p-1)) sum_chi |S_A(chi)|^2 |S_B(chi)|^2: the number of solutions of
/// a1 b1 = a2 b2, by orthogonality of characters.
inline double energy_via_characters(const CharSpectrum& a, const CharSpectrum& b) {
    if (a.size() != b.size()) throw DomainError("energy_via_characters: spectra of different primes");
    double acc = 0;
    for (std::size_t t = 0; t < a.size(); ++t) acc += std::norm(a[t]) * std::norm(b[t]);
    return acc / static_cast<double>(a.size());
}

/// max_{t != 0} |S_K(chi_t)| / (K^{1/2} p^{3/16}) for K = {1..K}.
inline double burgess_ratio(u64 k_len, const PrimeContext& ctx) {
    const auto spec = char_spectrum(initial_interval(k_len, ctx), ctx);
    double mx = 0;
    for (std::size_t t = 1; t < spec.size(); ++t) mx = std::max(mx, std::abs(spec[t]));
    return mx / (std::sqrt(static_cast<double>(k_len)) * std::pow(static_cast<double>(ctx.p()), 3.0 / 16.0));
}

}  // namespace fplab

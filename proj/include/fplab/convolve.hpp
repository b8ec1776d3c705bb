#pragma once

/**
 * @file convolve.hpp
 * @brief Exact cyclic convolution of count vectors over Z_n.
 *
 * Three strategies, chosen from a coefficient bound B (the product of all
 * input masses, which dominates every output entry):
 *
 *  - Direct: O(k n^2) schoolbook sums in 128-bit integers, for n <= 64.
 *  - FloatTransform: double-precision FFT of the zero-padded linear
 *    convolution. With 53-bit mantissas the rounding error of an FFT
 *    convolution is bounded by about B * 2^-53 * c * log2(N); for B < 2^40
 *    and N <= 2^23 that is far below 0.5, so rounding to the nearest
 *    integer recovers the exact value. Every output is additionally checked
 *    to lie within 0.25 of an integer.
 *  - MultiModulus: NTTs modulo three ~2^62 primes and Garner recombination.
 *    Exact for B <= 2^127 (the primes' product exceeds 2^185).
 *
 * A k-fold product is computed with one forward transform per input,
 * pointwise multiplication and a single inverse transform of length
 * N >= k(n-1)+1, then folded modulo n.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fplab/count_vector.hpp"
#include "fplab/error.hpp"
#include "fplab/ntt.hpp"
#include "fplab/transform.hpp"

namespace fplab {

enum class ConvolutionStrategy { Direct, FloatTransform, MultiModulus };

inline const char* to_string(ConvolutionStrategy s) {
    switch (s) {
        case ConvolutionStrategy::Direct: return "direct";
        case ConvolutionStrategy::FloatTransform: return "float-transform";
        case ConvolutionStrategy::MultiModulus: return "multi-modulus";
    }
    return "?";
}

inline constexpr std::size_t kDirectConvolutionMaxLength = 64;
inline constexpr long double kFloatCertifiedBound = 1099511627776.0L;  // 2^40
inline constexpr std::size_t kFloatMaxTransformLength = std::size_t{1} << 23;
// 2^127: leaves headroom for long double rounding of the bound itself.
inline constexpr long double kExactBoundLimit = 170141183460469231731687303715884105728.0L;

struct ConvolutionPlan {
    std::size_t length = 0;         // n, the cyclic group order
    std::size_t factors = 2;        // k, number of vectors convolved together
    long double bound = 0;          // upper bound on any output coefficient
    ConvolutionStrategy strategy = ConvolutionStrategy::Direct;

    std::size_t transform_length() const {
        return std::bit_ceil(factors * (length - 1) + 1);
    }

    std::string describe() const {
        return std::string(to_string(strategy)) + " n=" + std::to_string(length) + " k=" + std::to_string(factors) +
               " bound=" + std::to_string(static_cast<double>(bound));
    }
};

inline long double mass_product(std::span<const long double> masses) {
    long double b = 1;
    for (long double m : masses) b *= m;
    return b;
}

/// Selects the cheapest strategy certified for the given bound. Refuses
/// bounds beyond what 128-bit counts can hold.
inline ConvolutionPlan make_plan(std::size_t length, std::size_t factors, long double bound) {
    if (length == 0) throw DomainError("make_plan: empty length");
    if (factors < 1) throw DomainError("make_plan: need at least one factor");
    ConvolutionPlan plan{length, factors, bound, ConvolutionStrategy::Direct};
    if (bound > kExactBoundLimit) {
        throw BudgetExceeded("convolution coefficient bound " + std::to_string(static_cast<double>(bound)) +
                                 " exceeds 2^127; no strategy represents the result exactly",
                             bound, kExactBoundLimit);
    }
    if (length <= kDirectConvolutionMaxLength) return plan;
    if (plan.transform_length() > (std::size_t{1} << ntt::kMaxLog2Length)) {
        throw BudgetExceeded("convolution length " + std::to_string(plan.transform_length()) +
                                 " exceeds the supported transform size",
                             static_cast<long double>(plan.transform_length()),
                             static_cast<long double>(std::size_t{1} << ntt::kMaxLog2Length));
    }
    if (bound < kFloatCertifiedBound && plan.transform_length() <= kFloatMaxTransformLength) {
        plan.strategy = ConvolutionStrategy::FloatTransform;
    } else {
        plan.strategy = ConvolutionStrategy::MultiModulus;
    }
    return plan;
}

/// Plan for convolving exactly these vectors.
inline ConvolutionPlan make_plan(std::span<const CountVector> vectors) {
    if (vectors.empty()) throw DomainError("make_plan: no vectors");
    std::vector<long double> masses;
    for (const auto& v : vectors) masses.push_back(static_cast<long double>(v.total()));
    return make_plan(vectors.front().size(), vectors.size(), mass_product(masses));
}

namespace detail {

inline CountVector convolve_direct(std::span<const CountVector> vs) {
    const std::size_t n = vs.front().size();
    CountVector acc = vs.front();
    for (std::size_t f = 1; f < vs.size(); ++f) {
        CountVector next(n);
        const auto& v = vs[f];
        for (std::size_t i = 0; i < n; ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (v[j] == 0) continue;
                const std::size_t r = i + j >= n ? i + j - n : i + j;
                next[r] += acc[i] * v[j];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

inline CountVector convolve_float(std::span<const CountVector> vs, std::size_t big_n) {
    const std::size_t n = vs.front().size();
    std::vector<cplx> prod;
    for (const auto& v : vs) {
        std::vector<cplx> a(big_n, 0.0);
        for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<double>(v[i]);
        fft_pow2(a, +1);
        if (prod.empty()) {
            prod = std::move(a);
        } else {
            for (std::size_t i = 0; i < big_n; ++i) prod[i] *= a[i];
        }
    }
    fft_pow2(prod, -1);
    const double scale = 1.0 / static_cast<double>(big_n);
    CountVector out(n);
    for (std::size_t i = 0; i < big_n; ++i) {
        const double x = prod[i].real() * scale;
        const double r = std::nearbyint(x);
        if (std::abs(x - r) > 0.25 || r < -0.25) {
            throw std::logic_error("float convolution lost integrality at index " + std::to_string(i) +
                                   " (value " + std::to_string(x) + ")");
        }
        if (r > 0) out[i % n] += static_cast<u128>(r);
    }
    return out;
}

inline CountVector convolve_multi_modulus(std::span<const CountVector> vs, std::size_t big_n) {
    const std::size_t n = vs.front().size();
    std::array<std::vector<u64>, 3> folded;
    for (std::size_t q = 0; q < ntt::kPrimes.size(); ++q) {
        const auto& prime = ntt::kPrimes[q];
        const ntt::Montgomery mg(prime.modulus);
        std::vector<u64> prod;
        for (const auto& v : vs) {
            std::vector<u64> a(big_n, 0);
            for (std::size_t i = 0; i < n; ++i) a[i] = mg.to_mont(static_cast<u64>(v[i] % prime.modulus));
            ntt::transform(a, prime, false);
            if (prod.empty()) {
                prod = std::move(a);
            } else {
                for (std::size_t i = 0; i < big_n; ++i) prod[i] = mg.mul(prod[i], a[i]);
            }
        }
        ntt::transform(prod, prime, true);
        auto& f = folded[q];
        f.assign(n, 0);
        for (std::size_t i = 0; i < big_n; ++i) {
            const u64 x = mg.from_mont(prod[i]);
            f[i % n] = mg.add(f[i % n], x);
        }
    }
    const ntt::Garner garner;
    CountVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = garner.combine(folded[0][i], folded[1][i], folded[2][i]);
    return out;
}

}  // namespace detail

/// Convolves all vectors under `plan`, then checks mass conservation.
inline CountVector convolve_all(std::span<const CountVector> vectors, const ConvolutionPlan& plan) {
    if (vectors.empty()) throw DomainError("convolve: no vectors");
    u128 expected_mass = 1;
    long double mass_bound = 1;
    for (const auto& v : vectors) {
        if (v.size() != plan.length) {
            throw DomainError("convolve: vector length " + std::to_string(v.size()) + " does not match plan length " +
                              std::to_string(plan.length));
        }
        const u128 t = v.total();
        mass_bound *= static_cast<long double>(t);
        expected_mass *= t;
    }
    if (vectors.size() != plan.factors || mass_bound > plan.bound * (1.0L + 1e-15L)) {
        const auto needed = make_plan(std::span(vectors));
        throw BudgetExceeded("convolve: inputs (bound " + std::to_string(static_cast<double>(mass_bound)) +
                                 ", k=" + std::to_string(vectors.size()) + ") exceed plan '" + plan.describe() +
                                 "'; required strategy: " + to_string(needed.strategy),
                             mass_bound, plan.bound);
    }
    if (plan.strategy == ConvolutionStrategy::FloatTransform &&
        (plan.bound >= kFloatCertifiedBound || plan.transform_length() > kFloatMaxTransformLength)) {
        throw BudgetExceeded("convolve: plan '" + plan.describe() +
                                 "' is outside the certified float range; required strategy: " +
                                 to_string(ConvolutionStrategy::MultiModulus),
                             plan.bound, kFloatCertifiedBound);
    }
    CountVector out;
    switch (plan.strategy) {
        case ConvolutionStrategy::Direct: out = detail::convolve_direct(vectors); break;
        case ConvolutionStrategy::FloatTransform:
            out = detail::convolve_float(vectors, plan.transform_length());
            break;
        case ConvolutionStrategy::MultiModulus:
            out = detail::convolve_multi_modulus(vectors, plan.transform_length());
            break;
    }
    if (out.total() != expected_mass) {
        throw std::logic_error("convolve: mass not conserved (" + to_decimal(out.total()) + " vs " +
                               to_decimal(expected_mass) + ") under " + plan.describe());
    }
    return out;
}

/// w[r] = sum_t u[t] v[r - t mod n].
inline CountVector cyclic_convolve(const CountVector& u, const CountVector& v, const ConvolutionPlan& plan) {
    if (u.size() != v.size()) throw DomainError("cyclic_convolve: length mismatch");
    const CountVector pair[2] = {u, v};
    return convolve_all(pair, plan);
}

inline CountVector cyclic_convolve(const CountVector& u, const CountVector& v) {
    const CountVector pair[2] = {u, v};
    return convolve_all(pair, make_plan(std::span<const CountVector>(pair)));
}

/// k-fold cyclic convolution (k >= 2). For the count vectors of the maps
/// (m, x) -> m x^{-s}, entry r is the number of k-tuples summing to r.
inline CountVector k_fold_count(std::span<const CountVector> vectors, const ConvolutionPlan& plan) {
    if (vectors.size() < 2) throw DomainError("k_fold_count: need k >= 2 vectors");
    return convolve_all(vectors, plan);
}

inline CountVector k_fold_count(std::span<const CountVector> vectors) {
    if (vectors.size() < 2) throw DomainError("k_fold_count: need k >= 2 vectors");
    return convolve_all(vectors, make_plan(vectors));
}

}  // namespace fplab

#pragma once

/**
 * @file modfield.hpp
 * @brief Arithmetic in the prime field F_p.
 *
 * PrimeContext fixes an odd prime p (3 <= p < 2^40), its smallest primitive
 * root g and, for desk-scale p, the dense discrete-log table
 * dlog[u] = k with g^k = u. Everything else in the library takes a context.
 *
 * Residues are plain 64-bit integers in [0, p). The context is immutable and
 * may be shared freely between threads; the lazily built phase table is
 * guarded by std::call_once.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fplab/error.hpp"

namespace fplab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline constexpr u64 kMaxPrime = u64{1} << 40;
/// Largest p for which a dense dlog table is built (4 bytes per entry).
inline constexpr u64 kMaxDlogPrime = u64{1} << 28;

inline std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

inline std::string to_decimal(i128 v) {
    if (v < 0) return "-" + to_decimal(static_cast<u128>(-v));
    return to_decimal(static_cast<u128>(v));
}

inline constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline constexpr u64 pow_mod_u(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for n < 2^64.
inline constexpr bool is_prime(u64 n) {
    if (n < 2) return false;
    constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 b : bases) {
        if (n % b == 0) return n == b;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : bases) {
        u64 x = pow_mod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Distinct prime factors of n by trial division (n < 2^40 keeps this instant).
inline std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline bool is_primitive_root(u64 g, u64 p, std::span<const u64> factors) {
    if (g % p == 0) return false;
    return std::none_of(factors.begin(), factors.end(),
                        [&](u64 q) { return pow_mod_u(g, (p - 1) / q, p) == 1; });
}

/// Smallest g >= 2 generating F_p^*.
inline u64 find_primitive_root(u64 p) {
    if (p == 2) return 1;
    const auto factors = distinct_prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        if (is_primitive_root(g, p, factors)) return g;
    }
    throw DomainError("find_primitive_root: no primitive root modulo " + std::to_string(p));
}

/// dlog[u] = k with g^k = u, for u in 1..p-1; dlog[0] is unused and set to 0.
/// Built in O(p) by walking the powers of g; a non-generator is detected as
/// an orbit that returns to 1 early.
inline std::vector<std::uint32_t> build_dlog_table(u64 p, u64 g) {
    if (p > kMaxDlogPrime) {
        throw BudgetExceeded("build_dlog_table: p=" + std::to_string(p) + " exceeds dense table limit",
                             static_cast<long double>(p), static_cast<long double>(kMaxDlogPrime));
    }
    std::vector<std::uint32_t> dlog(p, 0);
    u64 x = 1;
    for (u64 k = 0; k + 1 < p; ++k) {
        if (k > 0 && x == 1) {
            throw DomainError("build_dlog_table: g=" + std::to_string(g) + " has order " + std::to_string(k) +
                              " < p-1; table not bijective");
        }
        dlog[x] = static_cast<std::uint32_t>(k);
        x = mul_mod(x, g, p);
    }
    if (x != 1) throw DomainError("build_dlog_table: g is not a unit modulo p");
    return dlog;
}

class PrimeContext {
public:
    /// Validates primality; `with_dlog` builds the discrete-log table.
    explicit PrimeContext(u64 p, bool with_dlog = true) : p_(p) {
        if (p < 3 || p >= kMaxPrime || !is_prime(p)) {
            throw DomainError("PrimeContext: p=" + std::to_string(p) + " is not an odd prime below 2^40");
        }
        g_ = find_primitive_root(p);
        if (with_dlog) {
            dlog_ = std::make_shared<const std::vector<std::uint32_t>>(build_dlog_table(p, g_));
        }
        phases_ = std::make_shared<LazyPhases>();
    }

    u64 p() const noexcept { return p_; }
    u64 generator() const noexcept { return g_; }
    bool has_dlog() const noexcept { return dlog_ != nullptr; }

    std::uint32_t dlog(u64 u) const {
        if (!dlog_) throw DomainError("PrimeContext: dlog table not built for p=" + std::to_string(p_));
        if (u == 0 || u >= p_) throw DomainError("dlog: argument " + std::to_string(u) + " not in F_p^*");
        return (*dlog_)[u];
    }

    std::span<const std::uint32_t> dlog_table() const {
        if (!dlog_) throw DomainError("PrimeContext: dlog table not built for p=" + std::to_string(p_));
        return *dlog_;
    }

    u64 mul(u64 a, u64 b) const noexcept {
        if (p_ < (u64{1} << 32)) return a * b % p_;
        return mul_mod(a, b, p_);
    }
    u64 add(u64 a, u64 b) const noexcept {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 reduce(i64 v) const noexcept {
        i64 r = v % static_cast<i64>(p_);
        return static_cast<u64>(r < 0 ? r + static_cast<i64>(p_) : r);
    }

    /// e_p(k) = exp(2 pi i k / p) for k = 0..p-1, built on first use.
    std::span<const std::complex<double>> phases() const {
        std::call_once(phases_->once, [this] {
            auto& table = phases_->table;
            table.resize(p_);
            for (u64 k = 0; k < p_; ++k) {
                const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p_);
                table[k] = {std::cos(angle), std::sin(angle)};
            }
        });
        return phases_->table;
    }

private:
    struct LazyPhases {
        std::once_flag once;
        std::vector<std::complex<double>> table;
    };

    u64 p_;
    u64 g_ = 0;
    std::shared_ptr<const std::vector<std::uint32_t>> dlog_;
    std::shared_ptr<LazyPhases> phases_;
};

/// base^exp mod p. A negative exponent means (base^{-1})^{|exp|}, so
/// x^{-s} reads the same as in the counting problems.
inline u64 mod_pow(u64 base, i64 exp, const PrimeContext& ctx) {
    const u64 p = ctx.p();
    if (base >= p) throw DomainError("mod_pow: base " + std::to_string(base) + " not reduced modulo p");
    if (exp < 0) {
        if (base == 0) throw DomainError("mod_pow: zero base with negative exponent");
        const u64 inv = pow_mod_u(base, p - 2, p);
        // |exp| computed without overflow for INT64_MIN
        return pow_mod_u(inv, static_cast<u64>(-(exp + 1)) + 1, p);
    }
    return pow_mod_u(base, static_cast<u64>(exp), p);
}

/// Montgomery's prefix-product trick: one exponentiation for the whole batch.
inline std::vector<u64> batch_inverse(std::span<const u64> values, const PrimeContext& ctx) {
    const std::size_t n = values.size();
    std::vector<u64> prefix(n);
    u64 acc = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const u64 v = values[i];
        if (v % ctx.p() == 0) {
            throw DomainError("batch_inverse: value at index " + std::to_string(i) + " is zero modulo p");
        }
        if (v >= ctx.p()) {
            throw DomainError("batch_inverse: value at index " + std::to_string(i) + " not reduced modulo p");
        }
        prefix[i] = acc;
        acc = ctx.mul(acc, v);
    }
    u64 inv = mod_pow(acc, -1, ctx);
    std::vector<u64> out(n);
    for (std::size_t i = n; i-- > 0;) {
        out[i] = ctx.mul(inv, prefix[i]);
        inv = ctx.mul(inv, values[i]);
    }
    return out;
}

}  // namespace fplab

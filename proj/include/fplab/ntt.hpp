#pragma once

// Number-theoretic transforms over three ~2^62 primes of the form c*2^26+1,
// with Montgomery multiplication, and Garner recombination of the residues
// into an exact 128-bit integer.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "fplab/error.hpp"
#include "fplab/modfield.hpp"

namespace fplab::ntt {

struct NttPrime {
    u64 modulus;
    u64 generator;  // primitive root modulo `modulus`
};

/// Largest transform length supported by every prime below.
inline constexpr unsigned kMaxLog2Length = 26;

inline constexpr std::array<NttPrime, 3> kPrimes = {{
    {4611686017554972673ULL, 5},  // 68719476709 * 2^26 + 1
    {4611686015004835841ULL, 3},  // 68719476671 * 2^26 + 1
    {4611686009971671041ULL, 6},  // 68719476596 * 2^26 + 1
}};

/// Montgomery arithmetic with R = 2^64 for an odd modulus below 2^62.
class Montgomery {
public:
    explicit constexpr Montgomery(u64 modulus) : mod_(modulus), neg_inv_(0), r2_(0) {
        u64 inv = modulus;  // Newton iteration for modulus^{-1} mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
        neg_inv_ = 0 - inv;
        r2_ = static_cast<u64>((static_cast<u128>(1) << 64) % modulus);
        r2_ = mul_mod(r2_, r2_, modulus);
    }

    constexpr u64 modulus() const noexcept { return mod_; }

    /// t * 2^-64 mod m for t < m * 2^64; result in [0, m).
    constexpr u64 reduce(u128 t) const noexcept {
        const u64 k = static_cast<u64>(t) * neg_inv_;
        const u128 sum = t + static_cast<u128>(k) * mod_;
        u64 r = static_cast<u64>(sum >> 64);
        return r >= mod_ ? r - mod_ : r;
    }
    constexpr u64 mul(u64 a, u64 b) const noexcept { return reduce(static_cast<u128>(a) * b); }
    constexpr u64 to_mont(u64 a) const noexcept { return mul(a % mod_, r2_); }
    constexpr u64 from_mont(u64 a) const noexcept { return reduce(a); }
    constexpr u64 add(u64 a, u64 b) const noexcept {
        const u64 s = a + b;
        return s >= mod_ ? s - mod_ : s;
    }
    constexpr u64 sub(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + mod_ - b; }
    constexpr u64 pow(u64 base_mont, u64 exp) const noexcept {
        u64 result = to_mont(1);
        while (exp) {
            if (exp & 1) result = mul(result, base_mont);
            base_mont = mul(base_mont, base_mont);
            exp >>= 1;
        }
        return result;
    }

private:
    u64 mod_;
    u64 neg_inv_;
    u64 r2_;
};

/// In-place cyclic NTT of power-of-two length on Montgomery-form data.
/// `inverse` applies the inverse transform including the 1/n scaling.
inline void transform(std::span<u64> a, const NttPrime& prime, bool inverse) {
    const std::size_t n = a.size();
    if (!std::has_single_bit(n) || std::countr_zero(n) > static_cast<int>(kMaxLog2Length)) {
        throw DomainError("ntt::transform: unsupported length " + std::to_string(n));
    }
    if (n == 1) return;
    const Montgomery mg(prime.modulus);
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    u64 root = mg.pow(mg.to_mont(prime.generator), (prime.modulus - 1) / n);
    if (inverse) root = mg.pow(root, n - 1);
    std::vector<u64> roots(n / 2);
    roots[0] = mg.to_mont(1);
    for (std::size_t k = 1; k < n / 2; ++k) roots[k] = mg.mul(roots[k - 1], root);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const u64 u = a[i + j];
                const u64 v = mg.mul(a[i + j + half], roots[j * stride]);
                a[i + j] = mg.add(u, v);
                a[i + j + half] = mg.sub(u, v);
            }
        }
    }
    if (inverse) {
        const u64 n_inv = mg.pow(mg.to_mont(n), prime.modulus - 2);
        for (auto& x : a) x = mg.mul(x, n_inv);
    }
}

/// Garner recombination of residues modulo kPrimes into the unique value
/// below their product, returned modulo 2^128 (exact whenever the true value
/// is below 2^128).
class Garner {
public:
    Garner() {
        const u64 p0 = kPrimes[0].modulus;
        const u64 p1 = kPrimes[1].modulus;
        const u64 p2 = kPrimes[2].modulus;
        inv_p0_mod_p1_ = pow_mod_u(p0 % p1, p1 - 2, p1);
        inv_p0p1_mod_p2_ = pow_mod_u(mul_mod(p0 % p2, p1 % p2, p2), p2 - 2, p2);
    }

    u128 combine(u64 r0, u64 r1, u64 r2) const noexcept {
        const u64 p0 = kPrimes[0].modulus;
        const u64 p1 = kPrimes[1].modulus;
        const u64 p2 = kPrimes[2].modulus;
        // x = r0 + p0*y1 + p0*p1*y2
        const u64 y1 = mul_mod((r1 + p1 - r0 % p1) % p1, inv_p0_mod_p1_, p1);
        const u64 partial = static_cast<u64>((static_cast<u128>(r0 % p2) + mul_mod(p0 % p2, y1, p2)) % p2);
        const u64 y2 = mul_mod((r2 + p2 - partial) % p2, inv_p0p1_mod_p2_, p2);
        return static_cast<u128>(r0) + static_cast<u128>(p0) * y1 + static_cast<u128>(p0) * p1 * y2;
    }

private:
    u64 inv_p0_mod_p1_ = 0;
    u64 inv_p0p1_mod_p2_ = 0;
};

}  // namespace fplab::ntt

#pragma once

/**
 * @file transform.hpp
 * @brief Complex discrete Fourier transforms of arbitrary length.
 *
 * Convention: dft(x, sign)[c] = sum_j x[j] * exp(sign * 2 pi i c j / n).
 * With sign = +1 and n = p this is the additive-character transform
 * c -> sum_j x[j] e_p(c j) used for complete exponential sums.
 *
 * Power-of-two lengths use an iterative radix-2 FFT whose twiddles are
 * evaluated directly (no recurrence), so the error grows like log n.
 * Other lengths go through Bluestein's chirp-z reduction to a power-of-two
 * convolution of length >= 2n-1; tiny lengths are evaluated directly.
 */

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "fplab/error.hpp"

namespace fplab {

using cplx = std::complex<double>;

inline constexpr std::size_t kDirectDftThreshold = 32;

namespace detail {

inline void bit_reverse_permute(std::span<cplx> a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace detail

/// In-place radix-2 FFT; a.size() must be a power of two.
inline void fft_pow2(std::span<cplx> a, int sign) {
    const std::size_t n = a.size();
    if (!std::has_single_bit(n)) throw DomainError("fft_pow2: length is not a power of two");
    if (n == 1) return;
    detail::bit_reverse_permute(a);
    std::vector<cplx> roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx t = a[i + j + half] * roots[j * stride];
                a[i + j + half] = a[i + j] - t;
                a[i + j] += t;
            }
        }
    }
}

inline std::vector<cplx> dft_direct(std::span<const cplx> x, int sign) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t c = 0; c < n; ++c) {
        cplx acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t k = (c * j) % n;
            const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            acc += x[j] * cplx(std::cos(angle), std::sin(angle));
        }
        out[c] = acc;
    }
    return out;
}

/// Bluestein: c*j = (c^2 + j^2 - (c-j)^2) / 2, so the transform is a
/// chirp-weighted linear convolution. Chirp phases use j^2 mod 2n computed
/// in integers to keep the angles small.
inline std::vector<cplx> dft_bluestein(std::span<const cplx> x, int sign) {
    const std::size_t n = x.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<cplx> chirp(n);
    const auto two_n = static_cast<unsigned __int128>(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(j) * j % two_n);
        const double angle = sign * std::numbers::pi * static_cast<double>(sq) / static_cast<double>(n);
        chirp[j] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<cplx> a(m, 0.0);
    std::vector<cplx> b(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    fft_pow2(a, +1);
    fft_pow2(b, +1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    fft_pow2(a, -1);
    const double scale = 1.0 / static_cast<double>(m);
    std::vector<cplx> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = a[c] * scale * chirp[c];
    return out;
}

/// Transform of any length n >= 1.
inline std::vector<cplx> dft(std::span<const cplx> x, int sign = +1) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    if (n <= kDirectDftThreshold) return dft_direct(x, sign);
    if (std::has_single_bit(n)) {
        std::vector<cplx> out(x.begin(), x.end());
        fft_pow2(out, sign);
        return out;
    }
    return dft_bluestein(x, sign);
}

/// u_hat[c] = sum_r u[r] e_p(c r) for a vector of prime length p.
inline std::vector<cplx> length_p_transform(std::span<const cplx> u) { return dft(u, +1); }

}  // namespace fplab

#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "fplab/modfield.hpp"

namespace fplab {

/// Exact distribution of a map into Z_n: counts[r] is the number of input
/// tuples landing on residue r. Counts are 128-bit so that k-fold
/// convolutions of desk-scale instances stay exact.
class CountVector {
public:
    CountVector() = default;
    explicit CountVector(std::size_t n) : counts_(n, 0) {}
    explicit CountVector(std::vector<u128> counts) : counts_(std::move(counts)) {}

    std::size_t size() const noexcept { return counts_.size(); }
    u128& operator[](std::size_t i) { return counts_[i]; }
    u128 operator[](std::size_t i) const { return counts_[i]; }
    std::span<const u128> counts() const noexcept { return counts_; }
    std::span<u128> counts() noexcept { return counts_; }

    u128 total() const noexcept { return std::accumulate(counts_.begin(), counts_.end(), u128{0}); }

    /// Sum of squared counts, i.e. the number of coincident pairs of tuples.
    u128 sum_of_squares() const noexcept {
        u128 s = 0;
        for (u128 c : counts_) s += c * c;
        return s;
    }

    friend bool operator==(const CountVector&, const CountVector&) = default;

private:
    std::vector<u128> counts_;
};

}  // namespace fplab

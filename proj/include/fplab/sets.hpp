#pragma once

// Intervals {L+1, ..., L+H} and arbitrary subsets of F_p^*, plus the seeded
// generator used to draw experiment instances.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fplab/error.hpp"
#include "fplab/modfield.hpp"

namespace fplab {

/// Residues L+1, ..., L+H reduced mod p. Only (L, H) are stored; elements
/// are produced on demand.
class Interval {
public:
    Interval(u64 shift, u64 length, u64 p) : shift_(shift), length_(length), p_(p) {}

    u64 shift() const noexcept { return shift_; }
    u64 length() const noexcept { return length_; }
    u64 modulus() const noexcept { return p_; }
    bool is_initial() const noexcept { return shift_ == 0; }

    /// 0 lies in {L+1, ..., L+H} iff p - L <= H (L already reduced, H < p).
    bool contains_zero() const noexcept { return shift_ != 0 && p_ - shift_ <= length_; }
    bool denominator_safe() const noexcept { return !contains_zero(); }

    /// i-th element, i in [0, H).
    u64 operator[](u64 i) const noexcept {
        const u64 v = shift_ + i + 1;
        return v >= p_ ? v - p_ : v;
    }

    std::vector<u64> elements() const {
        std::vector<u64> out(length_);
        for (u64 i = 0; i < length_; ++i) out[i] = (*this)[i];
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        u64 v = shift_;
        for (u64 i = 0; i < length_; ++i) {
            if (++v == p_) v = 0;
            f(v);
        }
    }

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    u64 shift_;
    u64 length_;
    u64 p_;
};

/// A subset of F_p^*: strictly increasing residues in [1, p-1].
class ResidueSet {
public:
    /// Sorts and deduplicates; rejects 0 and unreduced values.
    ResidueSet(std::vector<u64> values, const PrimeContext& ctx) : elems_(std::move(values)), p_(ctx.p()) {
        for (u64 v : elems_) {
            if (v == 0) throw DomainError("ResidueSet: 0 is not in F_p^*");
            if (v >= p_) {
                throw DomainError("ResidueSet: residue " + std::to_string(v) + " not reduced modulo p=" +
                                  std::to_string(p_));
            }
        }
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        if (elems_.empty()) throw DomainError("ResidueSet: empty set");
    }

    const std::vector<u64>& elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    u64 modulus() const noexcept { return p_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }
    bool contains(u64 v) const { return std::binary_search(elems_.begin(), elems_.end(), v); }

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

private:
    std::vector<u64> elems_;
    u64 p_;
};

/// {1, ..., H}.
inline Interval initial_interval(u64 length, const PrimeContext& ctx) {
    if (length < 1 || length > ctx.p() - 1) {
        throw DomainError("initial_interval: H=" + std::to_string(length) + " outside [1, p-1]");
    }
    return Interval(0, length, ctx.p());
}

/// {L+1, ..., L+H} with L reduced mod p first. When `require_denominator_safe`
/// is set, an interval passing through 0 is rejected.
inline Interval shifted_interval(i64 shift, u64 length, const PrimeContext& ctx,
                                 bool require_denominator_safe = false) {
    if (length < 1 || length > ctx.p() - 1) {
        throw DomainError("shifted_interval: H=" + std::to_string(length) + " outside [1, p-1]");
    }
    Interval iv(ctx.reduce(shift), length, ctx.p());
    if (require_denominator_safe && iv.contains_zero()) {
        throw DomainError("shifted_interval: {L+1..L+H} with L=" + std::to_string(shift) + ", H=" +
                          std::to_string(length) + " contains 0 mod p");
    }
    return iv;
}

/// Unbiased integer in [0, n) from a 64-bit engine (Lemire's multiply-shift
/// with rejection). Independent of the standard library's distribution
/// implementation, so draws are identical on every platform.
template <class Engine>
u64 uniform_below(Engine& rng, u64 n) {
    u64 x = rng();
    u128 m = static_cast<u128>(x) * n;
    auto low = static_cast<u64>(m);
    if (low < n) {
        const u64 threshold = (0 - n) % n;
        while (low < threshold) {
            x = rng();
            m = static_cast<u128>(x) * n;
            low = static_cast<u64>(m);
        }
    }
    return static_cast<u64>(m >> 64);
}

/// The experiment PRNG: std::mt19937_64 (MT19937-64, fully specified by the
/// C++ standard) seeded through std::seed_seq with the given words.
inline std::mt19937_64 make_rng(std::initializer_list<u64> words) {
    std::vector<std::uint32_t> seq;
    for (u64 w : words) {
        seq.push_back(static_cast<std::uint32_t>(w));
        seq.push_back(static_cast<std::uint32_t>(w >> 32));
    }
    std::seed_seq ss(seq.begin(), seq.end());
    return std::mt19937_64(ss);
}

/// Uniform M-subset of {1, ..., p-1}: partial Fisher-Yates over the implicit
/// index range, with displaced slots kept in a hash map.
inline ResidueSet random_subset(u64 count, u64 seed, const PrimeContext& ctx) {
    const u64 n = ctx.p() - 1;
    if (count < 1 || count > n) {
        throw DomainError("random_subset: M=" + std::to_string(count) + " outside [1, p-1]");
    }
    auto rng = make_rng({seed});
    std::unordered_map<u64, u64> swapped;
    auto slot = [&](u64 i) {
        auto it = swapped.find(i);
        return it == swapped.end() ? i : it->second;
    };
    std::vector<u64> picked;
    picked.reserve(count);
    for (u64 i = 0; i < count; ++i) {
        const u64 j = i + uniform_below(rng, n - i);
        const u64 vi = slot(i);
        const u64 vj = slot(j);
        swapped[j] = vi;
        picked.push_back(vj + 1);
    }
    return ResidueSet(std::move(picked), ctx);
}

/// Parses the set-file format: one decimal residue per line, blank lines and
/// '#' comments ignored. `source` names the input in error messages.
inline ResidueSet parse_residue_set(std::istream& in, const PrimeContext& ctx, const std::string& source = "<input>") {
    std::vector<u64> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text(line);
        if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        text = text.substr(first, text.find_last_not_of(" \t\r") - first + 1);
        const auto where = source + ":" + std::to_string(lineno);
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw ParseError(where + ": not a decimal residue: '" + std::string(text) + "'", lineno);
        }
        if (v == 0) throw ParseError(where + ": 0 is not in F_p^*", lineno);
        if (v >= ctx.p()) {
            throw ParseError(where + ": residue " + std::to_string(v) + " not reduced modulo p=" +
                                 std::to_string(ctx.p()),
                             lineno);
        }
        values.push_back(v);
    }
    if (values.empty()) throw ParseError(source + ": set file contains no residues", 0);
    return ResidueSet(std::move(values), ctx);
}

inline ResidueSet set_from_file(const std::string& path, const PrimeContext& ctx) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open set file '" + path + "'", 0);
    return parse_residue_set(in, ctx, path);
}

/// c * U for c in F_p^*.
inline ResidueSet dilate(const ResidueSet& set, u64 c, const PrimeContext& ctx) {
    if (c % ctx.p() == 0) throw DomainError("dilate: factor is zero modulo p");
    std::vector<u64> out;
    out.reserve(set.size());
    for (u64 m : set) out.push_back(ctx.mul(m, c % ctx.p()));
    return ResidueSet(std::move(out), ctx);
}

}  // namespace fplab

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fplab {

/// Input outside the mathematical domain of an operation (zero inverse,
/// interval through 0, out-of-range residue, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation would exceed its configured work budget or the capacity of
/// the exact integer types. `required` is the work (or bound) it would need.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, long double required, long double limit)
        : std::runtime_error(what), required_(required), limit_(limit) {}

    long double required() const noexcept { return required_; }
    long double limit() const noexcept { return limit_; }

private:
    long double required_;
    long double limit_;
};

/// Malformed text input; `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Work budget shared by the counting kernels: number of elementary
/// (pair / tuple) visits an operation may perform.
struct Budget {
    static constexpr std::uint64_t kDefault = 2'000'000'000ULL;
    std::uint64_t max_work = kDefault;
};

inline void require_budget(long double work, const Budget& budget, const char* op) {
    if (work > static_cast<long double>(budget.max_work)) {
        throw BudgetExceeded(std::string(op) + ": work " + std::to_string(static_cast<double>(work)) +
                                 " exceeds budget " + std::to_string(budget.max_work),
                             work, static_cast<long double>(budget.max_work));
    }
}

}  // namespace fplab

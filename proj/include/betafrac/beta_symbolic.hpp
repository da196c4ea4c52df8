#pragma once

// Beta-expansions, sum-condition admissibility, word counting and the
// sequence metric on {0,1}^Z.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "betafrac/params.hpp"

namespace betafrac {

enum class Admissibility {
    strict,   // every suffix sum < 1 (sequences of X_beta)
    closure,  // every suffix sum <= 1 (sequences of the closure)
};

/// A one-sided word d_1 .. d_n. Digit d_k is stored at index k - 1 and
/// carries weight beta^-k when evaluated.
class DigitString {
public:
    DigitString() = default;
    explicit DigitString(std::vector<std::uint8_t> digits);
    DigitString(std::initializer_list<int> digits);

    std::size_t size() const noexcept { return digits_.size(); }
    bool empty() const noexcept { return digits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
    std::span<const std::uint8_t> digits() const noexcept { return digits_; }

    void push_back(std::uint8_t d);

    friend bool operator==(const DigitString&, const DigitString&) = default;

private:
    std::vector<std::uint8_t> digits_;
};

/// Finite view [lo, hi] of a bi-infinite sequence (s_k). Digits outside the
/// window read as 0.
class SymbolWindow {
public:
    /// Window holding `bits` at indices lo, lo + 1, ... Throws
    /// std::invalid_argument if `bits` is empty or holds a non-binary value.
    SymbolWindow(std::int64_t lo, std::vector<std::uint8_t> bits);

    /// All-zero window on [lo, hi].
    static SymbolWindow zeros(std::int64_t lo, std::int64_t hi);

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return lo_ + static_cast<std::int64_t>(bits_.size()) - 1; }
    std::size_t width() const noexcept { return bits_.size(); }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    /// s_k with zero extension.
    std::uint8_t at(std::int64_t k) const noexcept;
    void set(std::int64_t k, std::uint8_t value);

    bool is_zero() const noexcept;

    /// Equality after zero extension (windows with different extents may
    /// represent the same sequence).
    bool same_sequence(const SymbolWindow& other) const noexcept;

private:
    std::int64_t lo_;
    std::vector<std::uint8_t> bits_;
};

/// Greedy digits d_k = floor(beta * T^{k-1} x) of x in [0,1) under
/// T x = beta x mod 1.
DigitString greedy_digits(double x, double beta, std::size_t n);

/// Greedy expansion of 1 itself (the orbit of 1 under T, with products that
/// land within kAdmissibilityTolerance of an integer snapped to it). At the
/// golden ratio this is 1,1,0,0,...
DigitString greedy_expansion_of_one(double beta, std::size_t n);

/// Sum_{k=1..n} d_k beta^-k.
double eval_digits(const DigitString& d, double beta);

/// Every suffix d_m .. d_n, evaluated as a beta-expansion, is < 1 (strict)
/// or <= 1 (closure). Strict rejects sums within kAdmissibilityTolerance of 1.
bool is_admissible(const DigitString& d, double beta, Admissibility mode);

/// For every i in [lo, hi + 1], Sum_{k>=1} s_{i-k} beta^-k satisfies the mode's
/// bound. Positions past hi only scale the last sum down, so they are implied.
bool is_admissible(const SymbolWindow& w, double beta, Admissibility mode);

/// Whether a single suffix sum passes the mode's bound.
bool suffix_sum_ok(double sum, Admissibility mode) noexcept;

inline constexpr std::size_t kDefaultWordBound = 40;

/// Number of strictly admissible words of length n. Depth-first extension
/// that prepends one digit at a time, so every visited node is itself
/// admissible. Throws ResourceError if n > bound.
std::uint64_t count_words(double beta, std::size_t n, std::size_t bound = kDefaultWordBound);

/// Every admissible window occupying indices [lo, lo + width - 1].
std::vector<SymbolWindow> admissible_windows(double beta, std::int64_t lo, std::size_t width,
                                             Admissibility mode);

/// d(a, b) = Sum_k |a_k - b_k| 2^-|k| over the union of both extents.
double seq_metric(const SymbolWindow& a, const SymbolWindow& b);

/// sigma^steps: the digit at index k moves to k + steps.
SymbolWindow shift_window(const SymbolWindow& w, std::int64_t steps);

}  // namespace betafrac

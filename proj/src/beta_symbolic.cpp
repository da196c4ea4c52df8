#include "betafrac/beta_symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betafrac/detail/parallel.hpp"

namespace betafrac {

namespace {

void require_binary(std::span<const std::uint8_t> digits) {
    for (auto d : digits) {
        if (d > 1) throw std::invalid_argument("digits must be 0 or 1");
    }
}

// Number of strictly admissible words of length `remaining` further digits
// prepended to a word whose leading suffix sum is `tail`.
std::uint64_t count_from(double tail, std::size_t remaining, double inv_beta) {
    if (remaining == 0) return 1;
    std::uint64_t total = count_from(tail * inv_beta, remaining - 1, inv_beta);
    const double with_one = (1.0 + tail) * inv_beta;
    if (suffix_sum_ok(with_one, Admissibility::strict)) {
        total += count_from(with_one, remaining - 1, inv_beta);
    }
    return total;
}

}  // namespace

DigitString::DigitString(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
    require_binary(digits_);
}

DigitString::DigitString(std::initializer_list<int> digits) {
    digits_.reserve(digits.size());
    for (int d : digits) {
        if (d != 0 && d != 1) throw std::invalid_argument("digits must be 0 or 1");
        digits_.push_back(static_cast<std::uint8_t>(d));
    }
}

void DigitString::push_back(std::uint8_t d) {
    if (d > 1) throw std::invalid_argument("digits must be 0 or 1");
    digits_.push_back(d);
}

SymbolWindow::SymbolWindow(std::int64_t lo, std::vector<std::uint8_t> bits)
    : lo_(lo), bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("a window holds at least one index");
    require_binary(bits_);
}

SymbolWindow SymbolWindow::zeros(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("window requires lo <= hi");
    return SymbolWindow(lo, std::vector<std::uint8_t>(static_cast<std::size_t>(hi - lo + 1), 0));
}

std::uint8_t SymbolWindow::at(std::int64_t k) const noexcept {
    if (k < lo_ || k > hi()) return 0;
    return bits_[static_cast<std::size_t>(k - lo_)];
}

void SymbolWindow::set(std::int64_t k, std::uint8_t value) {
    if (k < lo_ || k > hi()) throw std::out_of_range("index outside window");
    if (value > 1) throw std::invalid_argument("digits must be 0 or 1");
    bits_[static_cast<std::size_t>(k - lo_)] = value;
}

bool SymbolWindow::is_zero() const noexcept {
    return std::all_of(bits_.begin(), bits_.end(), [](auto b) { return b == 0; });
}

bool SymbolWindow::same_sequence(const SymbolWindow& other) const noexcept {
    const auto lo = std::min(lo_, other.lo_);
    const auto hi = std::max(this->hi(), other.hi());
    for (auto k = lo; k <= hi; ++k) {
        if (at(k) != other.at(k)) return false;
    }
    return true;
}

DigitString greedy_digits(double x, double beta, std::size_t n) {
    require_beta(beta);
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("greedy_digits requires x in [0, 1)");
    std::vector<std::uint8_t> digits;
    digits.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double y = beta * x;
        const auto d = static_cast<std::uint8_t>(y >= 1.0 ? 1 : 0);
        digits.push_back(d);
        x = y - d;
    }
    return DigitString(std::move(digits));
}

DigitString greedy_expansion_of_one(double beta, std::size_t n) {
    require_beta(beta);
    std::vector<std::uint8_t> digits;
    digits.reserve(n);
    double x = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        double y = beta * x;
        const double nearest = std::round(y);
        if (std::abs(y - nearest) <= kAdmissibilityTolerance) y = nearest;
        const auto d = static_cast<std::uint8_t>(y >= 1.0 ? 1 : 0);
        digits.push_back(d);
        x = y - d;
    }
    return DigitString(std::move(digits));
}

double eval_digits(const DigitString& d, double beta) {
    require_beta(beta);
    // Horner from the least significant digit.
    double sum = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) sum = (sum + d[i]) / beta;
    return sum;
}

bool suffix_sum_ok(double sum, Admissibility mode) noexcept {
    if (mode == Admissibility::strict) return sum < 1.0 - kAdmissibilityTolerance;
    return sum <= 1.0 + kAdmissibilityTolerance;
}

bool is_admissible(const DigitString& d, double beta, Admissibility mode) {
    require_beta(beta);
    double tail = 0.0;
    for (std::size_t i = d.size(); i-- > 0;) {
        tail = (tail + d[i]) / beta;
        if (!suffix_sum_ok(tail, mode)) return false;
    }
    return true;
}

bool is_admissible(const SymbolWindow& w, double beta, Admissibility mode) {
    require_beta(beta);
    // S(i + 1) = (S(i) + s_i) / beta with S(lo) = 0.
    double sum = 0.0;
    for (auto bit : w.bits()) {
        sum = (sum + bit) / beta;
        if (!suffix_sum_ok(sum, mode)) return false;
    }
    return true;
}

std::uint64_t count_words(double beta, std::size_t n, std::size_t bound) {
    require_beta(beta);
    if (n > bound) {
        throw ResourceError("count_words: length " + std::to_string(n) + " exceeds bound " +
                            std::to_string(bound));
    }
    const double inv_beta = 1.0 / beta;
    constexpr std::size_t kSplitDepth = 10;
    if (n <= kSplitDepth + 4) return count_from(0.0, n, inv_beta);

    // Breadth-first frontier, then independent subtrees in parallel.
    std::vector<double> frontier{0.0};
    for (std::size_t level = 0; level < kSplitDepth; ++level) {
        std::vector<double> next;
        next.reserve(frontier.size() * 2);
        for (double tail : frontier) {
            next.push_back(tail * inv_beta);
            const double with_one = (1.0 + tail) * inv_beta;
            if (suffix_sum_ok(with_one, Admissibility::strict)) next.push_back(with_one);
        }
        frontier = std::move(next);
    }
    std::vector<std::uint64_t> partial(frontier.size());
    detail::parallel_for(frontier.size(), [&](std::size_t i) {
        partial[i] = count_from(frontier[i], n - kSplitDepth, inv_beta);
    });
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

std::vector<SymbolWindow> admissible_windows(double beta, std::int64_t lo, std::size_t width,
                                             Admissibility mode) {
    require_beta(beta);
    if (width == 0) throw std::invalid_argument("window width must be positive");
    if (width > 30) throw ResourceError("admissible_windows: width above 30");
    std::vector<SymbolWindow> out;
    std::vector<std::uint8_t> bits(width, 0);
    // Recursive extension carrying the running sum S(lo + pos).
    auto extend = [&](auto&& self, std::size_t pos, double sum) -> void {
        if (pos == width) {
            out.emplace_back(lo, bits);
            return;
        }
        for (std::uint8_t b = 0; b <= 1; ++b) {
            const double next = (sum + b) / beta;
            if (!suffix_sum_ok(next, mode)) continue;
            bits[pos] = b;
            self(self, pos + 1, next);
        }
        bits[pos] = 0;
    };
    extend(extend, 0, 0.0);
    return out;
}

double seq_metric(const SymbolWindow& a, const SymbolWindow& b) {
    const auto lo = std::min(a.lo(), b.lo());
    const auto hi = std::max(a.hi(), b.hi());
    double sum = 0.0;
    for (auto k = lo; k <= hi; ++k) {
        if (a.at(k) != b.at(k)) {
            sum += std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(std::llabs(k), 1074)));
        }
    }
    return sum;
}

SymbolWindow shift_window(const SymbolWindow& w, std::int64_t steps) {
    return SymbolWindow(w.lo() + steps, std::vector<std::uint8_t>(w.bits().begin(), w.bits().end()));
}

}  // namespace betafrac

#include "betafrac/coding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betafrac/measures.hpp"

namespace betafrac {

CantorParams::CantorParams(double tau_, std::size_t depth_) : tau(tau_), depth(depth_) {
    require_tau(tau);
    if (depth == 0) throw std::invalid_argument("Cantor depth must be at least 1");
}

Point2 pi_coding(const SymbolWindow& w, const Params& params) {
    if (!is_admissible(w, params.beta(), Admissibility::closure)) {
        throw std::invalid_argument("pi_coding: window is not closure-admissible");
    }
    const auto depth = static_cast<std::int64_t>(truncation_depth(params.beta()));
    const double beta = params.beta();
    const double tau = params.tau();

    // Horner from the deepest retained digit on each side.
    double x = 0.0;
    for (std::int64_t k = std::min(depth, -w.lo()); k >= 1; --k) x = (x + w.at(-k)) / beta;
    double y = 0.0;
    for (std::int64_t k = std::min(depth - 1, w.hi()); k >= 0; --k) y = y * tau + w.at(k);
    y *= 1.0 - tau;
    return {std::clamp(x, 0.0, 1.0), std::clamp(y, 0.0, 1.0)};
}

ConjugacyResult check_conjugacy(const SymbolWindow& w, const Params& params) {
    ConjugacyResult result;
    if (w.is_zero()) {
        result.excluded = "all-zero sequence lies outside the punctured closure";
        return result;
    }
    const Point2 p = pi_coding(w, params);
    const double split = 1.0 / params.beta();
    if (std::abs(p.x - split) <= kAdmissibilityTolerance) {
        result.excluded = "past sum sits on the branch point 1/beta";
        return result;
    }
    result.second_branch = p.x > split;
    const Point2 lhs = apply_f(p, params);
    const Point2 rhs = pi_coding(shift_window(w, 1), params);
    result.residual = std::max(std::abs(lhs.x - rhs.x), std::abs(lhs.y - rhs.y));
    return result;
}

double check_injectivity(const SymbolWindow& a, const SymbolWindow& b, const Params& params) {
    if (!is_admissible(a, params.beta(), Admissibility::strict) ||
        !is_admissible(b, params.beta(), Admissibility::strict)) {
        throw std::invalid_argument("check_injectivity: windows must be strictly admissible");
    }
    const Point2 pa = pi_coding(a, params);
    const Point2 pb = pi_coding(b, params);
    return std::max(std::abs(pa.x - pb.x), std::abs(pa.y - pb.y));
}

namespace {

bool in_cantor_from(double y, double left, double width, std::size_t level, const CantorParams& cp) {
    constexpr double tol = kAdmissibilityTolerance;
    if (y < left - tol || y > left + width + tol) return false;
    // Below the tolerance scale every point of the interval is as good as a
    // deeper cylinder.
    if (level == cp.depth || width <= tol) return true;
    const double child = width * cp.tau;
    return in_cantor_from(y, left, child, level + 1, cp) ||
           in_cantor_from(y, left + width - child, child, level + 1, cp);
}

}  // namespace

bool in_cantor(double y, const CantorParams& cp) {
    return in_cantor_from(y, 0.0, 1.0, 0, cp);
}

MixingGap cylinder_mixing_gap(const DigitString& word_a, const DigitString& word_b, double beta,
                              std::size_t n_max) {
    if (word_a.empty() || word_b.empty()) {
        throw std::invalid_argument("cylinder_mixing_gap: words must be non-empty");
    }
    const auto as_window = [](const DigitString& d, std::int64_t at) {
        return SymbolWindow(at, std::vector<std::uint8_t>(d.digits().begin(), d.digits().end()));
    };
    if (!is_admissible(as_window(word_a, 0), beta, Admissibility::strict) ||
        !is_admissible(as_window(word_b, 0), beta, Admissibility::strict)) {
        throw std::invalid_argument("cylinder_mixing_gap: words must be strictly admissible");
    }
    if (n_max > 4096) throw ResourceError("cylinder_mixing_gap: n_max above 4096");

    const auto len_a = static_cast<std::int64_t>(word_a.size());
    const auto len_b = static_cast<std::int64_t>(word_b.size());
    auto realized = [&](std::int64_t n) {
        auto config = SymbolWindow::zeros(0, std::max(len_a - 1, n + len_b - 1));
        for (std::int64_t j = 0; j < len_a; ++j) config.set(j, word_a[static_cast<std::size_t>(j)]);
        for (std::int64_t j = 0; j < len_b; ++j) {
            const auto bit = word_b[static_cast<std::size_t>(j)];
            if (n + j < len_a && config.at(n + j) != bit) return false;
            config.set(n + j, bit);
        }
        return is_admissible(config, beta, Admissibility::strict);
    };

    MixingGap result;
    result.n_max = n_max;
    std::size_t gap = 0;
    for (std::size_t n = n_max; n >= 1; --n) {
        if (!realized(static_cast<std::int64_t>(n))) {
            gap = n;
            break;
        }
    }
    if (n_max >= 1 && gap == n_max) return result;
    result.gap = gap;
    return result;
}

SymbolWindow sample_admissible(double beta, std::size_t width, std::uint64_t seed) {
    return sample_admissible(ParryMeasure(beta), width, seed);
}

SymbolWindow sample_admissible(const ParryMeasure& measure, std::size_t width, std::uint64_t seed) {
    const std::size_t limit = 2 * truncation_depth(measure.beta());
    if (width == 0 || width > limit) {
        throw std::invalid_argument("sample_admissible: width must lie in [1, 2 K(beta)]");
    }
    const DigitString d = sample_parry(measure, width, seed);
    // The last stream digit sits at lo, the first at hi: reading the window
    // backwards from any index replays a forward beta-expansion.
    std::vector<std::uint8_t> bits(d.digits().rbegin(), d.digits().rend());
    const auto lo = -static_cast<std::int64_t>(width / 2);
    return SymbolWindow(lo, std::move(bits));
}

}  // namespace betafrac

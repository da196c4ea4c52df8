#include "betafrac/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "betafrac/coding.hpp"
#include "betafrac/detail/parallel.hpp"
#include "betafrac/detail/random.hpp"

namespace betafrac {

std::vector<double> parry_orbit(double beta, std::size_t n) {
    require_beta(beta);
    std::vector<double> orbit;
    orbit.reserve(n + 1);
    double x = 1.0;
    orbit.push_back(x);
    for (std::size_t k = 0; k < n; ++k) {
        double y = beta * x;
        const double nearest = std::round(y);
        if (std::abs(y - nearest) <= kAdmissibilityTolerance) y = nearest;
        x = y >= 1.0 ? y - 1.0 : y;
        orbit.push_back(x);
    }
    return orbit;
}

ParryMeasure::ParryMeasure(double beta, std::size_t n_terms) : beta_(beta) {
    require_beta(beta);
    if (n_terms == 0) n_terms = truncation_depth(beta);
    orbit_ = parry_orbit(beta, n_terms);

    std::vector<double> weights(orbit_.size());
    double w = 1.0;
    for (std::size_t n = 0; n < orbit_.size(); ++n, w /= beta) weights[n] = w;
    for (std::size_t n = 0; n < orbit_.size(); ++n) normalization_ += weights[n] * orbit_[n];

    breakpoints_ = {0.0, 1.0};
    for (double t : orbit_) {
        if (t > 0.0 && t < 1.0) breakpoints_.push_back(t);
    }
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());

    const std::size_t m = breakpoints_.size() - 1;
    levels_.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double upper = breakpoints_[i + 1];
        double sum = 0.0;
        for (std::size_t n = 0; n < orbit_.size(); ++n) {
            if (orbit_[n] >= upper) sum += weights[n];
        }
        levels_[i] = sum / normalization_;
    }
    cumulative_.assign(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        cumulative_[i + 1] = cumulative_[i] + levels_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    }
}

double ParryMeasure::density(double x) const {
    if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("Parry density is defined on [0, 1)");
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double ParryMeasure::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return cumulative_.back();
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return cumulative_[i] + levels_[i] * (x - breakpoints_[i]);
}

double ParryMeasure::quantile(double u) const {
    if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("quantile requires u in [0, 1)");
    const double target = u * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    auto i = static_cast<std::size_t>(it - cumulative_.begin());
    i = std::clamp<std::size_t>(i, 1, levels_.size()) - 1;
    const double x = breakpoints_[i] + (target - cumulative_[i]) / levels_[i];
    return std::min(x, std::nextafter(1.0, 0.0));
}

double parry_density(double x, double beta, std::size_t n_terms) {
    return ParryMeasure(beta, n_terms).density(x);
}

double beta_map(double x, double beta) noexcept {
    const double y = beta * x;
    return y >= 1.0 ? y - 1.0 : y;
}

namespace {

DigitString parry_digits(const ParryMeasure& measure, std::size_t length, detail::Rng& rng) {
    const double beta = measure.beta();
    double x = measure.quantile(detail::uniform01(rng));
    std::vector<std::uint8_t> digits(length);
    for (std::size_t k = 0; k < length; ++k) {
        const double y = beta * x;
        digits[k] = y >= 1.0 ? 1 : 0;
        x = y - digits[k];
    }
    return DigitString(std::move(digits));
}

}  // namespace

DigitString sample_parry(double beta, std::size_t length, std::uint64_t seed) {
    return sample_parry(ParryMeasure(beta), length, seed);
}

DigitString sample_parry(const ParryMeasure& measure, std::size_t length, std::uint64_t seed) {
    if (length == 0) throw std::invalid_argument("sample_parry: length must be at least 1");
    const double beta = measure.beta();
    for (std::uint64_t attempt = 0;; ++attempt) {
        detail::Rng rng(detail::mix_seed(seed, attempt));
        DigitString d = parry_digits(measure, length, rng);
        if (is_admissible(d, beta, Admissibility::strict)) return d;
    }
}

double block_entropy(const DigitString& d, std::size_t k) {
    if (k == 0 || k > 63) throw std::invalid_argument("block_entropy: k must lie in [1, 63]");
    if (d.size() < k) throw std::invalid_argument("block_entropy: string shorter than block");
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    std::vector<std::uint64_t> codes;
    codes.reserve(d.size() - k + 1);
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        code = ((code << 1) | d[i]) & mask;
        if (i + 1 >= k) codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    const double total = static_cast<double>(codes.size());
    double entropy = 0.0;
    for (std::size_t i = 0; i < codes.size();) {
        std::size_t j = i;
        while (j < codes.size() && codes[j] == codes[i]) ++j;
        const double p = static_cast<double>(j - i) / total;
        entropy -= p * std::log(p);
        i = j;
    }
    return entropy / static_cast<double>(k);
}

EntropyReport entropy_report(double beta, const DigitString& d, std::size_t k) {
    EntropyReport report;
    report.block_len = k;
    report.sample_len = d.size();
    report.block_entropy_rate = block_entropy(d, k);
    report.target = std::log(beta);
    if (k <= kDefaultWordBound) {
        const std::uint64_t recommended = 100 * count_words(beta, k);
        if (d.size() < recommended) {
            report.warnings.push_back("sample length " + std::to_string(d.size()) +
                                      " is below the recommended " + std::to_string(recommended) +
                                      " for block length " + std::to_string(k));
        }
    }
    return report;
}

double topological_entropy_estimate(double beta, std::size_t n) {
    if (n == 0) throw std::invalid_argument("topological_entropy_estimate: n must be at least 1");
    const auto now = count_words(beta, n);
    const auto next = count_words(beta, n + 1);
    return std::log(static_cast<double>(next) / static_cast<double>(now));
}

double ly_dimension(const Params& params, double h) {
    if (!(h >= 0.0 && h <= std::numbers::ln2 + 1e-12)) {
        throw std::domain_error("ly_dimension: entropy must lie in [0, ln 2]");
    }
    return h * (1.0 / std::log(params.beta()) + 1.0 / std::log(1.0 / params.tau()));
}

namespace {

double cdf_deviation(const ParryMeasure& measure, const std::vector<std::uint64_t>& counts,
                     std::size_t total) {
    const std::size_t bins = counts.size();
    double worst = 0.0;
    std::uint64_t below = 0;
    for (std::size_t j = 0; j < bins; ++j) {
        below += counts[j];
        const double edge = static_cast<double>(j + 1) / static_cast<double>(bins);
        const double empirical = static_cast<double>(below) / static_cast<double>(total);
        worst = std::max(worst, std::abs(empirical - measure.cdf(edge)));
    }
    return worst;
}

std::size_t bin_of(double x, std::size_t bins) {
    return std::min(bins - 1, static_cast<std::size_t>(x * static_cast<double>(bins)));
}

}  // namespace

InvarianceCheck density_invariance(double beta, std::size_t steps, std::uint64_t seed,
                                   std::size_t bins) {
    if (steps == 0 || bins == 0) throw std::invalid_argument("density_invariance: empty sample");
    const ParryMeasure measure(beta);
    InvarianceCheck check;
    check.steps = steps;
    check.bins = bins;

    std::vector<std::uint64_t> orbit_counts(bins, 0);
    std::vector<std::uint64_t> push_counts(bins, 0);
    constexpr std::size_t kCoarseBins = 20;
    std::vector<std::uint64_t> coarse(kCoarseBins, 0);

    detail::Rng rng(detail::mix_seed(seed, 0));
    double x = measure.quantile(detail::uniform01(rng));
    for (std::size_t i = 0; i < steps; ++i) {
        x = beta_map(x, beta);
        ++orbit_counts[bin_of(x, bins)];
        ++coarse[bin_of(x, kCoarseBins)];
    }
    detail::Rng draws(detail::mix_seed(seed, 1));
    for (std::size_t i = 0; i < steps; ++i) {
        const double pushed = beta_map(measure.quantile(detail::uniform01(draws)), beta);
        ++push_counts[bin_of(pushed, bins)];
    }
    check.orbit_cdf_deviation = cdf_deviation(measure, orbit_counts, steps);
    check.push_cdf_deviation = cdf_deviation(measure, push_counts, steps);

    const double width = 1.0 / kCoarseBins;
    for (std::size_t j = 0; j < kCoarseBins; ++j) {
        const double lo = static_cast<double>(j) * width;
        const double expected = (measure.cdf(lo + width) - measure.cdf(lo)) / width;
        const double observed = static_cast<double>(coarse[j]) / (static_cast<double>(steps) * width);
        check.histogram_density_deviation =
            std::max(check.histogram_density_deviation, std::abs(observed - expected));
    }
    return check;
}

PointCloud nu_beta_cloud(const Params& params, std::size_t count, std::uint64_t seed) {
    const std::size_t width = 2 * truncation_depth(params.beta());
    const ParryMeasure measure(params.beta());
    PointCloud cloud{std::vector<Point2>(count), params, seed};
    detail::parallel_for(count, [&](std::size_t i) {
        const SymbolWindow w = sample_admissible(measure, width, detail::mix_seed(seed, i));
        cloud.points[i] = pi_coding(w, params);
    });
    return cloud;
}

namespace {

double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

LocalDimensionEstimate local_dimension_estimate(const PointCloud& cloud, std::size_t center_count,
                                                std::span<const double> radii, std::uint64_t seed,
                                                std::size_t min_ball_count) {
    if (cloud.points.empty()) throw std::invalid_argument("local_dimension_estimate: empty cloud");
    if (center_count == 0) throw std::invalid_argument("local_dimension_estimate: no centres");
    std::vector<double> r(radii.begin(), radii.end());
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.size() < 2 || !(r.front() > 0.0)) {
        throw std::invalid_argument("local_dimension_estimate: need at least two positive radii");
    }
    const double r_max = r.back();
    std::vector<double> log_r(r.size());
    std::transform(r.begin(), r.end(), log_r.begin(), [](double v) { return std::log(v); });

    std::vector<Point2> by_x = cloud.points;
    std::sort(by_x.begin(), by_x.end(), [](const Point2& a, const Point2& b) { return a.x < b.x; });
    const double total = static_cast<double>(by_x.size());

    std::vector<Point2> centers(center_count);
    detail::Rng rng(detail::mix_seed(seed, 0));
    for (auto& c : centers) {
        c = cloud.points[static_cast<std::size_t>(detail::uniform01(rng) * total)];
    }

    std::vector<double> slopes(center_count, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::uint8_t> floored(center_count, 0);
    detail::parallel_for(center_count, [&](std::size_t c) {
        const Point2 center = centers[c];
        const auto first = std::lower_bound(by_x.begin(), by_x.end(), center.x - r_max,
                                            [](const Point2& p, double v) { return p.x < v; });
        std::vector<std::uint64_t> counts(r.size(), 0);
        for (auto it = first; it != by_x.end() && it->x <= center.x + r_max; ++it) {
            const double d = std::max(std::abs(it->x - center.x), std::abs(it->y - center.y));
            if (d > r_max) continue;
            ++counts[static_cast<std::size_t>(std::lower_bound(r.begin(), r.end(), d) - r.begin())];
        }
        std::vector<double> xs, ys;
        std::uint64_t inside = 0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            inside += counts[j];
            if (inside < min_ball_count) {
                floored[c] = 1;
                continue;
            }
            xs.push_back(log_r[j]);
            ys.push_back(std::log(static_cast<double>(inside) / total));
        }
        if (xs.size() >= 2) slopes[c] = least_squares_slope(xs, ys);
    });

    LocalDimensionEstimate est;
    std::vector<double> valid;
    for (double s : slopes) {
        if (!std::isnan(s)) valid.push_back(s);
    }
    est.centers_used = valid.size();
    if (std::any_of(floored.begin(), floored.end(), [](auto f) { return f != 0; })) {
        est.warnings.push_back("radius floor applied: some balls held fewer than " +
                               std::to_string(min_ball_count) + " points");
    }
    if (valid.empty()) {
        est.warnings.push_back("no centre had two usable radii");
        return est;
    }
    const auto mid = valid.begin() + static_cast<std::ptrdiff_t>(valid.size() / 2);
    std::nth_element(valid.begin(), mid, valid.end());
    est.dimension = *mid;
    if (valid.size() % 2 == 0) {
        const double lower = *std::max_element(valid.begin(), mid);
        est.dimension = 0.5 * (est.dimension + lower);
    }
    return est;
}

}  // namespace betafrac

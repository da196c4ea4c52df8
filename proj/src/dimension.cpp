#include "betafrac/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "betafrac/measures.hpp"

namespace betafrac {

namespace {

constexpr long double kSnap = 1e-6L;
constexpr std::uint64_t kMaxIntervals = std::uint64_t{1} << 32;

std::int64_t snapped_floor(long double v) {
    const long double r = std::round(v);
    return static_cast<std::int64_t>(std::abs(v - r) <= kSnap ? r : std::floor(v));
}

std::int64_t snapped_ceil(long double v) {
    const long double r = std::round(v);
    return static_cast<std::int64_t>(std::abs(v - r) <= kSnap ? r : std::ceil(v));
}

// Cell index range [first, last] of a closed interval [a, b] on a grid of side
// eps, counting cells of positive overlap (one cell for a point).
std::pair<std::int64_t, std::int64_t> cell_range(long double a, long double b, long double eps,
                                                 std::int64_t cells) {
    std::int64_t first = snapped_floor(a / eps);
    std::int64_t last = std::max(first, snapped_ceil(b / eps) - 1);
    first = std::clamp<std::int64_t>(first, 0, cells - 1);
    last = std::clamp<std::int64_t>(last, 0, cells - 1);
    return {first, last};
}

std::int64_t cells_per_side(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("box_count: eps must be positive");
    const long double per_side = 1.0L / static_cast<long double>(eps);
    if (per_side > 0x1.0p52L) throw ResourceError("box_count: eps too small to index the grid");
    return std::max<std::int64_t>(1, snapped_ceil(per_side));
}

long double rect_y0(const Rect& r, const RectSet& set) {
    return set.tau > 0.0 ? address_offset(r.address, set.generation, set.tau) : r.y0;
}

long double rect_height(const Rect& r, const RectSet& set) {
    return set.tau > 0.0 ? std::pow(static_cast<long double>(set.tau), set.generation)
                         : static_cast<long double>(r.y1) - r.y0;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
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

struct Row {
    std::int64_t row;
    std::int64_t first;
    std::int64_t last;
};

}  // namespace

double theoretical_dimension(const Params& params) {
    return 1.0 + std::log(params.beta()) / std::log(1.0 / params.tau());
}

std::uint64_t box_count(const RectSet& set, double eps) {
    const std::int64_t cells = cells_per_side(eps);
    const long double e = eps;
    std::vector<Row> rows;
    rows.reserve(set.rects.size() * 2);
    for (const Rect& r : set.rects) {
        const auto [c0, c1] = cell_range(r.x0, r.x1, e, cells);
        const long double y0 = rect_y0(r, set);
        const auto [r0, r1] = cell_range(y0, y0 + rect_height(r, set), e, cells);
        if (rows.size() + static_cast<std::uint64_t>(r1 - r0 + 1) > kMaxIntervals) {
            throw ResourceError("box_count: more than 2^32 row intervals");
        }
        for (auto j = r0; j <= r1; ++j) rows.push_back({j, c0, c1});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.row != b.row ? a.row < b.row : a.first < b.first;
    });
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < rows.size();) {
        const auto row = rows[i].row;
        std::int64_t covered_to = -1;
        for (; i < rows.size() && rows[i].row == row; ++i) {
            const auto start = std::max(rows[i].first, covered_to + 1);
            if (rows[i].last >= start) {
                count += static_cast<std::uint64_t>(rows[i].last - start + 1);
                covered_to = rows[i].last;
            }
        }
    }
    return count;
}

std::uint64_t box_count(std::span<const Point2> points, double eps) {
    const std::int64_t cells = cells_per_side(eps);
    if (cells > (std::int64_t{1} << 31)) throw ResourceError("box_count: grid too fine for clouds");
    std::vector<std::uint64_t> keys;
    keys.reserve(points.size());
    for (const Point2& p : points) {
        const auto col = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.x / eps)),
                                                  0, cells - 1);
        const auto row = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor(p.y / eps)),
                                                  0, cells - 1);
        keys.push_back(static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(cells) +
                       static_cast<std::uint64_t>(col));
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

std::uint64_t aligned_cover_count(const RectSet& set, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("aligned_cover_count: eps must be positive");
    const long double e = eps;
    std::uint64_t count = 0;
    for (const Rect& r : set.rects) {
        const auto across = std::max<std::int64_t>(1, snapped_ceil((static_cast<long double>(r.x1) - r.x0) / e));
        const auto up = std::max<std::int64_t>(1, snapped_ceil(rect_height(r, set) / e));
        count += static_cast<std::uint64_t>(across) * static_cast<std::uint64_t>(up);
    }
    return count;
}

CoveringCheck covering_check(const Params& params, std::size_t n) {
    const RectSet set = iterate_rectangles(params, n);
    const double eps = std::pow(params.tau(), static_cast<double>(n));
    CoveringCheck check;
    check.n = n;
    check.rectangles = set.rects.size();
    check.grid_count = box_count(set, eps);
    check.cover_count = aligned_cover_count(set, eps);
    const long double bound = (std::pow(static_cast<long double>(params.beta()), n) + 1.0L) /
                              std::pow(static_cast<long double>(params.tau()), n);
    check.bound = static_cast<std::uint64_t>(std::floor(bound * (1.0L + 1e-12L)));
    check.holds = check.cover_count <= check.bound && (n >= 64 || check.rectangles <= (std::uint64_t{1} << n));
    return check;
}

bool covering_bound_check(const Params& params, std::size_t n) {
    return covering_check(params, n).holds;
}

namespace {

BoxReport regress(const Params& params, std::span<const std::size_t> depths, bool keep_transient,
                  auto&& count_at) {
    if (depths.empty()) throw std::invalid_argument("boxdim_estimate: no depths given");
    BoxReport report;
    report.theoretical = theoretical_dimension(params);
    const double log_inv_tau = std::log(1.0 / params.tau());
    std::vector<double> xs, ys;
    for (std::size_t n : depths) {
        const double eps = std::pow(params.tau(), static_cast<double>(n));
        const std::uint64_t count = count_at(n, eps);
        report.depths.push_back(n);
        report.scales.push_back(eps);
        report.counts.push_back(count);
        report.bounds.push_back((std::pow(params.beta(), static_cast<double>(n)) + 1.0) / eps);
        if ((keep_transient || n > 1) && count > 0) {
            xs.push_back(static_cast<double>(n) * log_inv_tau);
            ys.push_back(std::log(static_cast<double>(count)));
        }
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("boxdim_estimate: need two depths above the transient range");
    }
    report.slope = fit_slope(xs, ys);
    return report;
}

void warn_undersampled(BoxReport& report, std::size_t points) {
    if (report.counts.empty()) return;
    const auto finest = *std::max_element(report.counts.begin(), report.counts.end());
    if (finest > 0 && static_cast<double>(points) < 10.0 * static_cast<double>(finest)) {
        report.warnings.push_back("cloud undersamples the finest scale: " + std::to_string(points) +
                                  " points for " + std::to_string(finest) + " occupied cells");
    }
}

}  // namespace

BoxReport boxdim_estimate(const Params& params, std::span<const std::size_t> depths,
                          BoxSource source, std::size_t cloud_size, std::uint64_t seed,
                          bool keep_transient) {
    if (source == BoxSource::rectangles) {
        return regress(params, depths, keep_transient, [&](std::size_t n, double eps) {
            return box_count(iterate_rectangles(params, n), eps);
        });
    }
    if (cloud_size == 0) throw std::invalid_argument("boxdim_estimate: cloud source needs points");
    return boxdim_from_cloud(nu_beta_cloud(params, cloud_size, seed), depths, keep_transient);
}

BoxReport boxdim_from_cloud(const PointCloud& cloud, std::span<const std::size_t> depths,
                            bool keep_transient) {
    BoxReport report = regress(cloud.params, depths, keep_transient,
                               [&](std::size_t, double eps) { return box_count(cloud.points, eps); });
    warn_undersampled(report, cloud.points.size());
    return report;
}

}  // namespace betafrac

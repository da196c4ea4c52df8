#include "betafrac/skew_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "betafrac/detail/parallel.hpp"
#include "betafrac/detail/random.hpp"

namespace betafrac {

Point2 apply_f(Point2 p, const Params& params) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
        std::ostringstream msg;
        msg << "apply_f: point (" << p.x << ", " << p.y << ") outside the unit square";
        throw std::domain_error(msg.str());
    }
    const double beta = params.beta();
    const double tau = params.tau();
    Point2 out;
    if (p.x <= 1.0 / beta) {
        out = {beta * p.x, tau * p.y};
    } else {
        out = {beta * p.x - 1.0, tau * p.y + (1.0 - tau)};
    }
    // Rounding can push an image one ulp past the square.
    out.x = std::clamp(out.x, 0.0, 1.0);
    out.y = std::clamp(out.y, 0.0, 1.0);
    return out;
}

RectSet iterate_rectangles(const Params& params, std::size_t n, std::size_t depth_bound) {
    if (n > depth_bound) {
        throw ResourceError("iterate_rectangles: depth " + std::to_string(n) + " exceeds bound " +
                            std::to_string(depth_bound));
    }
    if (n > 32) throw ResourceError("iterate_rectangles: addresses hold at most 32 generations");
    const double beta = params.beta();
    const double tau = params.tau();
    const double split = 1.0 / beta;
    const double split_tolerance = split * kAdmissibilityTolerance;

    RectSet set;
    set.tau = tau;
    set.rects.push_back({0.0, 1.0, 0.0, 1.0, 0});
    double height = 1.0;
    for (std::size_t gen = 0; gen < n; ++gen) {
        height *= tau;
        std::vector<Rect> next;
        next.reserve(set.rects.size() * 2);
        for (const Rect& r : set.rects) {
            if (r.x0 <= split + split_tolerance) {
                const double right = std::min(r.x1, split);
                const double y0 = tau * r.y0;
                next.push_back({beta * r.x0, std::min(beta * right, 1.0), y0, y0 + height,
                                r.address << 1});
            }
            if (r.x1 > split + split_tolerance) {
                const double left = std::max(r.x0, split);
                const double y0 = tau * r.y0 + (1.0 - tau);
                next.push_back({std::max(beta * left - 1.0, 0.0), beta * r.x1 - 1.0, y0,
                                std::min(y0 + height, 1.0), (r.address << 1) | 1U});
            }
        }
        set.rects = std::move(next);
        set.generation = gen + 1;
    }
    return set;
}

double total_width(const RectSet& set) {
    double sum = 0.0;
    for (const Rect& r : set.rects) sum += r.width();
    return sum;
}

std::vector<std::string> rectset_violations(const RectSet& set, const Params& params) {
    std::vector<std::string> problems;
    const auto n = set.generation;
    const double height = std::pow(params.tau(), static_cast<double>(n));

    if (n < 64 && set.rects.size() > (std::uint64_t{1} << n)) {
        problems.push_back("more than 2^n rectangles");
    }
    for (const Rect& r : set.rects) {
        if (!(r.x0 >= 0.0 && r.x1 <= 1.0 && r.y0 >= 0.0 && r.y1 <= 1.0)) {
            problems.push_back("rectangle outside the unit square");
            break;
        }
        if (!(r.width() > 0.0)) {
            problems.push_back("degenerate rectangle");
            break;
        }
        if (std::abs(r.height() - height) > 1e-12 * std::max(height, 1e-300) + 4e-16) {
            problems.push_back("rectangle height differs from tau^n");
            break;
        }
    }
    const double expected = std::pow(params.beta(), static_cast<double>(n));
    if (std::abs(total_width(set) - expected) > 1e-9 * expected) {
        problems.push_back("width sum differs from beta^n");
    }
    // Distinct addresses are distinct level-n Cantor intervals, which are
    // pairwise disjoint for tau < 1/2. Sorting by offset also checks the
    // stored endpoints wherever tau^n is resolvable in double precision.
    std::vector<std::pair<long double, const Rect*>> order;
    order.reserve(set.rects.size());
    for (const Rect& r : set.rects) {
        order.emplace_back(address_offset(r.address, n, params.tau()), &r);
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const bool resolvable = height > 1e-13;
    for (std::size_t i = 1; i < order.size(); ++i) {
        const Rect& lower = *order[i - 1].second;
        const Rect& upper = *order[i].second;
        if (lower.address == upper.address || (resolvable && !(lower.y1 < upper.y0))) {
            problems.push_back("overlapping y-projections");
            break;
        }
    }
    return problems;
}

long double address_offset(std::uint32_t address, std::size_t generation, double tau) {
    const long double t = tau;
    long double offset = 0.0L;
    long double weight = 1.0L - t;
    for (std::size_t k = 0; k < generation; ++k) {
        if ((address >> k) & 1U) offset += weight;
        weight *= t;
    }
    return offset;
}

namespace {

void record_orbit(Point2 p, const Params& params, std::size_t burn_in, std::size_t keep,
                  std::span<Point2> out) {
    for (std::size_t i = 0; i < burn_in; ++i) p = apply_f(p, params);
    for (std::size_t i = 0; i < keep; ++i) {
        out[i] = p;
        if (i + 1 < keep) p = apply_f(p, params);
    }
}

}  // namespace

PointCloud attract_cloud(const Params& params, std::size_t samples, std::size_t burn_in,
                         std::size_t keep, std::uint64_t seed) {
    if (keep == 0) throw std::invalid_argument("attract_cloud: keep must be at least 1");
    PointCloud cloud{std::vector<Point2>(samples * keep), params, seed};
    std::span<Point2> all(cloud.points);
    detail::parallel_for(samples, [&](std::size_t i) {
        detail::Rng rng(detail::mix_seed(seed, i));
        const double x = detail::uniform01(rng);
        const double y = detail::uniform01(rng);
        record_orbit({x, y}, params, burn_in, keep, all.subspan(i * keep, keep));
    });
    return cloud;
}

PointCloud attract_from(const Params& params, std::span<const Point2> starts, std::size_t burn_in,
                        std::size_t keep) {
    if (keep == 0) throw std::invalid_argument("attract_from: keep must be at least 1");
    PointCloud cloud{std::vector<Point2>(starts.size() * keep), params, 0};
    std::span<Point2> all(cloud.points);
    for (std::size_t i = 0; i < starts.size(); ++i) {
        record_orbit(starts[i], params, burn_in, keep, all.subspan(i * keep, keep));
    }
    return cloud;
}

}  // namespace betafrac

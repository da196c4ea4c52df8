#pragma once

// The skew product f on [0,1]^2, its exact rectangle images f^n([0,1]^2) and
// sampled attractor clouds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betafrac/params.hpp"

namespace betafrac {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

/// Closed axis-aligned rectangle [x0, x1] x [y0, y1]. For members of a
/// RectSet, bit k of `address` is the branch taken k steps before the last
/// one (1 = second branch); it fixes y0 exactly even when tau^n drops below
/// double resolution.
struct Rect {
    double x0 = 0.0;
    double x1 = 0.0;
    double y0 = 0.0;
    double y1 = 0.0;
    std::uint32_t address = 0;

    double width() const noexcept { return x1 - x0; }
    double height() const noexcept { return y1 - y0; }
};

/// f^generation([0,1]^2) as aligned rectangles of common height tau^generation.
struct RectSet {
    std::vector<Rect> rects;
    std::size_t generation = 0;
    /// Contraction used to build the set; 0 for hand-made sets, which makes
    /// consumers fall back to the stored y endpoints.
    double tau = 0.0;
};

struct PointCloud {
    std::vector<Point2> points;
    Params params;
    std::uint64_t seed = 0;
};

/// f(x, y) = (beta x, tau y) for x <= 1/beta, (beta x - 1, tau y + 1 - tau)
/// otherwise. Throws std::domain_error outside the unit square.
Point2 apply_f(Point2 p, const Params& params);

inline constexpr std::size_t kDefaultRectangleDepth = 24;

/// Exact image f^n([0,1]^2). A rectangle whose right edge lies within
/// kAdmissibilityTolerance of 1/beta is treated as ending on the split point,
/// which belongs to the left branch. Throws ResourceError if n > depth_bound.
RectSet iterate_rectangles(const Params& params, std::size_t n,
                           std::size_t depth_bound = kDefaultRectangleDepth);

/// Human-readable list of violated RectSet invariants; empty when all hold.
std::vector<std::string> rectset_violations(const RectSet& set, const Params& params);

/// y0 of a generation-n rectangle recomputed from its address in extended
/// precision: Sum_k b_k (1 - tau) tau^k.
long double address_offset(std::uint32_t address, std::size_t generation, double tau);

double total_width(const RectSet& set);

/// `samples` uniform starts on [0,1]^2, each iterated burn_in times, then
/// `keep` successive states recorded (the first being f^burn_in(start)).
/// Start i draws from a generator seeded by (seed, i), so the cloud is
/// independent of thread count.
PointCloud attract_cloud(const Params& params, std::size_t samples, std::size_t burn_in,
                         std::size_t keep, std::uint64_t seed);

/// Same recording scheme from explicit starting points.
PointCloud attract_from(const Params& params, std::span<const Point2> starts, std::size_t burn_in,
                        std::size_t keep);

}  // namespace betafrac

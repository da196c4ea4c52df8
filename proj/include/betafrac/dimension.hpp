#pragma once

// Box counting on rectangle sets and point clouds, the covering bound for
// f^n([0,1]^2), and box-dimension regression against the closed formula.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "betafrac/params.hpp"
#include "betafrac/skew_system.hpp"

namespace betafrac {

/// 1 + ln beta / ln(1/tau).
double theoretical_dimension(const Params& params);

/// Occupied cells of the eps-grid anchored at the origin. A cell counts when
/// it shares positive area with a rectangle (or, for a zero-width side, the
/// cell containing it). Cell edges within 1e-6 cell units of a grid line snap
/// to it. Throws ResourceError past 2^32 materialized row intervals or when
/// 1/eps is too large to index.
std::uint64_t box_count(const RectSet& set, double eps);

/// Occupied cells of the eps-grid among the points (cells clamp to the unit
/// square, so x = 1 falls in the last column).
std::uint64_t box_count(std::span<const Point2> points, double eps);

/// Squares of side eps laid along each rectangle from its lower-left corner:
/// Sum ceil(width/eps) ceil(height/eps). A genuine eps-square cover, so it
/// bounds the minimal cover count from above.
std::uint64_t aligned_cover_count(const RectSet& set, double eps);

struct CoveringCheck {
    std::size_t n = 0;
    std::size_t rectangles = 0;
    std::uint64_t grid_count = 0;
    std::uint64_t cover_count = 0;
    /// floor((beta^n + 1) / tau^n)
    std::uint64_t bound = 0;
    bool holds = false;
};

/// Builds f^n([0,1]^2) and compares the aligned cover of its rectangles at
/// scale tau^n with (beta^n + 1)/tau^n; also requires at most 2^n rectangles.
CoveringCheck covering_check(const Params& params, std::size_t n);

bool covering_bound_check(const Params& params, std::size_t n);

enum class BoxSource { rectangles, cloud };

struct BoxReport {
    std::vector<std::size_t> depths;
    std::vector<double> scales;         // tau^n
    std::vector<std::uint64_t> counts;  // N_{tau^n}
    std::vector<double> bounds;         // (beta^n + 1) / tau^n
    double slope = 0.0;
    double theoretical = 0.0;
    std::vector<std::string> warnings;
};

/// Least-squares slope of ln N_{tau^n} against n ln(1/tau). Depths n <= 1 are
/// reported but left out of the fit unless keep_transient is set. The cloud
/// source draws `cloud_size` points of nu_beta.
BoxReport boxdim_estimate(const Params& params, std::span<const std::size_t> depths,
                          BoxSource source, std::size_t cloud_size = 0, std::uint64_t seed = 1,
                          bool keep_transient = false);

/// Same regression over a caller-supplied cloud.
BoxReport boxdim_from_cloud(const PointCloud& cloud, std::span<const std::size_t> depths,
                            bool keep_transient = false);

}  // namespace betafrac

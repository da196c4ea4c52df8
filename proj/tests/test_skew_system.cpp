#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "betafrac/coding.hpp"
#include "betafrac/skew_system.hpp"

using namespace betafrac;

namespace {

std::vector<Params> grid() {
    std::vector<Params> g;
    for (double beta : {1.3, 1.5, kGoldenRatio, 1.8, 1.95}) {
        for (double tau : {0.1, 0.25, 1.0 / 3.0, 0.45}) g.emplace_back(beta, tau);
    }
    return g;
}

bool covered(const RectSet& set, Point2 p, double slack) {
    return std::any_of(set.rects.begin(), set.rects.end(), [&](const Rect& r) {
        return p.x >= r.x0 - slack && p.x <= r.x1 + slack && p.y >= r.y0 - slack && p.y <= r.y1 + slack;
    });
}

}  // namespace

TEST_CASE("apply_f branches") {
    const Params p(1.5, 0.25);
    const Point2 a = apply_f({0.3, 0.4}, p);
    CHECK(a.x == doctest::Approx(0.45));
    CHECK(a.y == doctest::Approx(0.10));
    const Point2 b = apply_f({0.8, 0.4}, p);
    CHECK(b.x == doctest::Approx(0.20));
    CHECK(b.y == doctest::Approx(0.85));
    const Point2 c = apply_f({1.0 / 1.5, 0.6}, p);
    CHECK(c.x == doctest::Approx(1.0));
    CHECK(c.y == doctest::Approx(0.25 * 0.6));
    CHECK(apply_f({0.0, 0.0}, p) == Point2{0.0, 0.0});
    CHECK_THROWS_AS(apply_f({1.2, 0.5}, p), std::domain_error);
    CHECK_THROWS_AS(apply_f({0.5, -0.1}, p), std::domain_error);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(Params(1.0, 0.25), std::domain_error);
    CHECK_THROWS_AS(Params(2.0, 0.25), std::domain_error);
    CHECK_THROWS_AS(Params(1.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(Params(1.5, 0.0), std::domain_error);
    CHECK_NOTHROW(Params(1.5, 0.49));
}

TEST_CASE("rectangles: small generations") {
    const Params p(1.5, 0.25);
    const RectSet s0 = iterate_rectangles(p, 0);
    REQUIRE(s0.rects.size() == 1);
    CHECK(s0.rects[0].x0 == 0.0);
    CHECK(s0.rects[0].x1 == 1.0);
    CHECK(s0.rects[0].y0 == 0.0);
    CHECK(s0.rects[0].y1 == 1.0);

    const RectSet s1 = iterate_rectangles(p, 1);
    REQUIRE(s1.rects.size() == 2);
    const Rect& low = s1.rects[0];
    const Rect& high = s1.rects[1];
    CHECK(low.x1 == doctest::Approx(1.0));
    CHECK(low.y0 == 0.0);
    CHECK(low.y1 == doctest::Approx(0.25));
    CHECK(high.x0 == 0.0);
    CHECK(high.x1 == doctest::Approx(0.5));
    CHECK(high.y0 == doctest::Approx(0.75));
    CHECK(high.y1 == doctest::Approx(1.0));

    CHECK(total_width(iterate_rectangles(p, 6)) == doctest::Approx(std::pow(1.5, 6)).epsilon(1e-12));
    CHECK(std::pow(1.5, 6) == doctest::Approx(11.3906).epsilon(1e-5));
    CHECK_THROWS_AS(iterate_rectangles(p, 25), ResourceError);
    CHECK_THROWS_AS(iterate_rectangles(p, 10, 8), ResourceError);
}

TEST_CASE("rectangles: width sum and disjointness across the grid") {
    for (const Params& p : grid()) {
        for (std::size_t n = 0; n <= 20; ++n) {
            const RectSet s = iterate_rectangles(p, n);
            const double expected = std::pow(p.beta(), static_cast<double>(n));
            REQUIRE(std::abs(total_width(s) - expected) <= 1e-9 * expected);
            REQUIRE(s.rects.size() <= (std::size_t{1} << n));
            const auto problems = rectset_violations(s, p);
            INFO("beta=" << p.beta() << " tau=" << p.tau() << " n=" << n);
            REQUIRE(problems.empty());
        }
    }
}

TEST_CASE("rectangles: exact y-disjointness where heights are resolvable") {
    for (const Params& p : grid()) {
        for (std::size_t n = 1; n <= 10; ++n) {
            RectSet s = iterate_rectangles(p, n);
            std::sort(s.rects.begin(), s.rects.end(), [](const Rect& a, const Rect& b) { return a.y0 < b.y0; });
            for (std::size_t i = 1; i < s.rects.size(); ++i) REQUIRE(s.rects[i - 1].y1 < s.rects[i].y0);
        }
    }
}

TEST_CASE("rectangles: nesting of y-intervals") {
    for (const Params& p : grid()) {
        RectSet parent = iterate_rectangles(p, 0);
        for (std::size_t n = 1; n <= 12; ++n) {
            const RectSet child = iterate_rectangles(p, n);
            std::vector<std::pair<double, double>> spans;
            for (const Rect& r : parent.rects) spans.emplace_back(r.y0, r.y1);
            std::sort(spans.begin(), spans.end());
            for (const Rect& c : child.rects) {
                auto it = std::upper_bound(spans.begin(), spans.end(), std::make_pair(c.y0 + 1e-15, 2.0));
                REQUIRE(it != spans.begin());
                --it;
                REQUIRE(c.y0 >= it->first - 1e-15);
                REQUIRE(c.y1 <= it->second + 1e-15);
            }
            parent = child;
        }
    }
}

TEST_CASE("rectangles contain pushed-forward sample points") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const Params& p : grid()) {
        for (std::size_t n : {1u, 3u, 6u, 9u}) {
            const RectSet s = iterate_rectangles(p, n);
            for (int i = 0; i < 300; ++i) {
                Point2 q{u(rng), u(rng)};
                for (std::size_t k = 0; k < n; ++k) q = apply_f(q, p);
                REQUIRE(covered(s, q, 1e-9));
            }
        }
    }
}

TEST_CASE("attractor clouds") {
    const Params p(1.5, 0.25);
    const std::vector<Point2> origin{{0.0, 0.0}};
    const PointCloud fixed = attract_from(p, origin, 0, 1);
    REQUIRE(fixed.points.size() == 1);
    CHECK(fixed.points[0] == Point2{0.0, 0.0});

    const PointCloud a = attract_cloud(p, 2000, 50, 3, 99);
    const PointCloud b = attract_cloud(p, 2000, 50, 3, 99);
    CHECK(a.points == b.points);
    CHECK(a.points.size() == 6000);
    CHECK_FALSE(a.points == attract_cloud(p, 2000, 50, 3, 100).points);
    const CantorParams cp(p.tau(), 50);
    for (const Point2& q : a.points) {
        REQUIRE(in_cantor(q.y, cp));
        const Point2 image = apply_f(q, p);
        REQUIRE(image.x >= 0.0);
        REQUIRE(image.x <= 1.0);
        REQUIRE(image.y >= 0.0);
        REQUIRE(image.y <= 1.0);
    }
    // Recorded states are successive iterates.
    for (std::size_t i = 0; i < 2000; ++i) {
        const Point2 next = apply_f(a.points[3 * i], p);
        REQUIRE(next == a.points[3 * i + 1]);
    }
    CHECK_THROWS_AS(attract_cloud(p, 10, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("address offsets reproduce stored y0") {
    const Params p(kGoldenRatio, 1.0 / 3.0);
    const RectSet s = iterate_rectangles(p, 10);
    for (const Rect& r : s.rects) {
        REQUIRE(static_cast<double>(address_offset(r.address, s.generation, p.tau())) ==
                doctest::Approx(r.y0).epsilon(1e-12));
    }
}

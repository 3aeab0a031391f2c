#include <doctest.h>

#include <cmath>
#include <vector>

#include "mmconn/analytics.hpp"
#include "mmconn/geometry.hpp"
#include "mmconn/model.hpp"

using namespace mmconn;

namespace {

const Strip kStrip{200.0, 20.0};

bool connected(const Strip& s, const std::vector<AxisRect>& obs)
{
    return free_space_connected(s, obs).connected;
}

bool raster(const Strip& s, const std::vector<AxisRect>& obs, double res)
{
    return grid_flood_fill_connected(s, obs, {0.0, 0.0}, {s.d, 0.0}, res);
}

BlockageModelParams dense_params()
{
    return {5e-4, GrainDistribution::uniform(2.0, 14.0), GrainDistribution::uniform(2.0, 14.0)};
}

}  // namespace

TEST_CASE("point_in_rect uses the closed-set convention")
{
    const AxisRect r{0.0, 0.0, 5.0, 5.0};
    CHECK(point_in_rect({0.0, 0.0}, r));
    CHECK(point_in_rect({5.0, 0.0}, r));
    CHECK_FALSE(point_in_rect({5.001, 0.0}, r));
    CHECK_FALSE(point_in_open_rect({5.0, 0.0}, r));
}

TEST_CASE("horizontal_segment_intersects_rect")
{
    CHECK(horizontal_segment_intersects_rect(0, 200, {100, 0, 5, 5}));
    CHECK_FALSE(horizontal_segment_intersects_rect(0, 200, {100, 6, 5, 5}));

    // [-11,-1] is disjoint from [0,200]; confirm by sampling points on the segment.
    const AxisRect left{-6, 0, 5, 5};
    bool any_inside = false;
    for (int k = 0; k <= 20000; ++k)
        any_inside = any_inside || point_in_rect({0.01 * k, 0.0}, left);
    CHECK_FALSE(any_inside);
    CHECK_FALSE(horizontal_segment_intersects_rect(0, 200, left));
}

TEST_CASE("segment_intersects_open_rect")
{
    const AxisRect r{0, 0, 1, 1};
    CHECK(segment_intersects_open_rect({-2, 0}, {2, 0}, r));
    CHECK_FALSE(segment_intersects_open_rect({-2, 1}, {2, 1}, r));  // grazes the top edge
    CHECK_FALSE(segment_intersects_open_rect({-3, 0}, {-1, 0}, r)); // ends on the left edge
    CHECK(segment_intersects_open_rect({-2, -2}, {2, 2}, r));
    CHECK_FALSE(segment_intersects_open_rect({-2, 0}, {0, 2}, r));  // passes through a corner
    CHECK(segment_intersects_open_rect({0.5, 0.5}, {0.5, 0.5}, r)); // degenerate, inside
}

TEST_CASE("free_space_connected examples")
{
    CHECK(connected(kStrip, {}));
    CHECK_FALSE(connected(kStrip, {{100, 0, 5, 15}}));  // cuts the strip
    CHECK(connected(kStrip, {{100, 8, 5, 5}}));         // corridor y in [-10, 3]
    CHECK_FALSE(connected(kStrip, {{0, 0, 2, 2}}));     // source indoor
    CHECK_FALSE(connected(kStrip, {{200, 3, 2, 4}}));   // destination indoor
}

TEST_CASE("free_space_connected rejects endpoints outside the strip")
{
    CHECK_THROWS_AS(free_space_connected(kStrip, {}, {0, 0}, {201, 0}), std::invalid_argument);
    CHECK_THROWS_AS(free_space_connected(kStrip, {}, {0, 10.5}, {200, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Strip(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Strip(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("free_space_connected handles a staircase that forces a detour")
{
    // Over the first obstacle, then down through x in (65,70) and under the second.
    const std::vector<AxisRect> obs{{60, -3, 5, 8}, {75, 4, 5, 5.5}};
    const auto out = free_space_connected(kStrip, obs);
    CHECK(out.connected == raster(kStrip, obs, 0.05));

    // Closing the top gap cuts the strip.
    const std::vector<AxisRect> closed{{60, -3, 5, 8}, {63, 6, 5, 5}};
    CHECK_FALSE(connected(kStrip, closed));
    CHECK_FALSE(raster(kStrip, closed, 0.05));
}

TEST_CASE("kappa = 0 reduces to the LOS test")
{
    const Strip seg{200.0, 0.0};
    CHECK(connected(seg, {}));
    CHECK(connected(seg, {{100, 6, 5, 5}}));
    CHECK_FALSE(connected(seg, {{100, 4, 5, 5}}));
    CHECK_FALSE(connected(seg, {{-4, 0, 5, 1}}));
    const auto out = free_space_connected(seg, std::vector<AxisRect>{});
    REQUIRE(out.witness);
    CHECK(out.witness->size() == 2);

    const BlockageModelParams params{1e-3, GrainDistribution::uniform(2, 20), GrainDistribution::uniform(2, 20)};
    const LinkGeometry link{200.0, 0.0};
    for (std::uint64_t s = 0; s < 2000; ++s) {
        const ObstacleField f = sample_field(params, link, mix(99, s));
        bool los = !is_indoor(Point{0, 0}, f) && !is_indoor(Point{200, 0}, f);
        for (const AxisRect& r : f.obstacles)
            los = los && !horizontal_segment_intersects_rect(0, 200, r);
        REQUIRE(connected(seg, f.obstacles) == los);
    }
}

TEST_CASE("blocked-centroid area of a single grain matches the area kernel")
{
    // Rejection-sample the centroid of one w x l obstacle over a box that
    // contains every blocking position and count blocked links.
    struct Case {
        double w, l, kappa, expected;
    };
    const Case cases[] = {
        {10, 10, 20, 200},    // only src/dst covered
        {10, 10, 5, 1150},    // grain cuts the strip
        {10, 10, 0, 2100},    // LOS only
        {300, 10, 20, 5000},  // wider than the link
    };
    const double d = 200.0;
    for (const Case& c : cases) {
        CAPTURE(c.kappa);
        CAPTURE(c.w);
        const double x_lo = -c.w / 2 - 1, x_hi = d + c.w / 2 + 1;
        const double y_hi = (c.kappa + c.l) / 2 + 1;
        const double box = (x_hi - x_lo) * 2 * y_hi;
        SplitMix64 rng(12345);
        const int n = 200000;
        int blocked = 0;
        for (int k = 0; k < n; ++k) {
            const AxisRect r{rng.uniform(x_lo, x_hi), rng.uniform(-y_hi, y_hi), c.w / 2, c.l / 2};
            blocked += !free_space_connected(Strip{d, c.kappa}, std::vector<AxisRect>{r}).connected;
        }
        const double p = double(blocked) / n;
        const double area = p * box;
        const double sigma = box * std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(area - c.expected) <= 4 * sigma);
        CHECK(area_kernel(c.w, c.l, d, c.kappa) == doctest::Approx(c.expected));
    }
}

TEST_CASE("compressed cells never straddle an obstacle edge")
{
    const BlockageModelParams params = dense_params();
    const LinkGeometry link{200.0, 20.0};
    for (std::uint64_t s = 0; s < 200; ++s) {
        const ObstacleField f = sample_field(params, link, mix(5, s));
        const auto g = detail::build_compressed_grid(link.strip(), f.obstacles, link.source(), link.destination());
        SplitMix64 rng(s);
        for (std::size_t j = 0; j < g.ny(); ++j)
            for (std::size_t i = 0; i < g.nx(); ++i) {
                const bool blocked = g.is_blocked(i, j);
                for (int t = 0; t < 4; ++t) {
                    // interior points only
                    const Point p{g.xs[i] + (g.xs[i + 1] - g.xs[i]) * (0.01 + 0.98 * rng.uniform01()),
                                  g.ys[j] + (g.ys[j + 1] - g.ys[j]) * (0.01 + 0.98 * rng.uniform01())};
                    bool inside = false;
                    for (const AxisRect& r : f.obstacles)
                        inside = inside || point_in_open_rect(p, r);
                    REQUIRE(inside == blocked);
                }
            }
    }
}

TEST_CASE("exact and raster connectivity agree on random fields")
{
    const BlockageModelParams params = dense_params();
    const LinkGeometry link{200.0, 20.0};
    int disagreements = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
        const ObstacleField f = sample_field(params, link, mix(17, s));
        const bool exact = connected(link.strip(), f.obstacles);
        if (exact != raster(link.strip(), f.obstacles, 0.05)) {
            ++disagreements;
            CHECK(exact == raster(link.strip(), f.obstacles, 0.025));
        }
    }
    CHECK(disagreements <= 1);
}

TEST_CASE("raster oracle input validation")
{
    CHECK(raster(kStrip, {}, 0.05));
    CHECK_FALSE(raster(kStrip, {{100, 0, 5, 15}}, 0.05));
    CHECK(raster(kStrip, {{100, 8, 5, 5}}, 0.05));
    CHECK_THROWS_AS(raster(kStrip, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(raster(kStrip, {}, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(grid_flood_fill_connected(kStrip, {}, {0, 0}, {200, 0}, 0.01, {.max_cells = 1000}), GridTooLarge);
}

TEST_CASE("witnesses are sound and connectivity is monotone")
{
    const BlockageModelParams params = dense_params();
    const LinkGeometry wide{200.0, 40.0};
    for (std::uint64_t s = 0; s < 500; ++s) {
        const ObstacleField f = sample_field(params, wide, mix(23, s));
        const auto out = free_space_connected(Strip{200, 20}, f.obstacles);
        REQUIRE(out.connected == out.witness.has_value());
        if (out.connected) {
            REQUIRE(witness_is_sound(*out.witness, Strip{200, 20}, f.obstacles, {0, 0}, {200, 0}));
            // a wider window keeps the link
            CHECK(connected(Strip{200, 40}, f.obstacles));
            // dropping any obstacle keeps the link
            for (std::size_t k = 0; k < f.obstacles.size(); ++k) {
                auto fewer = f.obstacles;
                fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
                CHECK(connected(Strip{200, 20}, fewer));
            }
        }
    }
}

TEST_CASE("witness_is_sound rejects bad paths")
{
    const std::vector<AxisRect> obs{{100, 0, 5, 5}};
    CHECK_FALSE(witness_is_sound({{0, 0}, {200, 0}}, kStrip, obs, {0, 0}, {200, 0}));
    CHECK(witness_is_sound({{0, 0}, {0, 7}, {200, 7}, {200, 0}}, kStrip, obs, {0, 0}, {200, 0}));
    CHECK_FALSE(witness_is_sound({{0, 0}, {0, 12}, {200, 12}, {200, 0}}, kStrip, obs, {0, 0}, {200, 0}));
    CHECK_FALSE(witness_is_sound({{0, 0}, {100, 7}}, kStrip, obs, {0, 0}, {200, 0}));
}

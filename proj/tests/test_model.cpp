#include <doctest.h>

#include <array>
#include <cmath>

#include "mmconn/model.hpp"

using namespace mmconn;

TEST_CASE("grain distribution accessors")
{
    const auto det = GrainDistribution::deterministic(10.0);
    CHECK(det.mean() == 10.0);
    CHECK(det.support_min() == 10.0);
    CHECK(det.support_max() == 10.0);

    const auto uni = GrainDistribution::uniform(5.0, 15.0);
    CHECK(uni.mean() == 10.0);
    CHECK(uni.support_min() == 5.0);
    CHECK(uni.support_max() == 15.0);

    const auto pmf = GrainDistribution::pmf({5.0, 10.0, 20.0, 30.0}, {0.3, 0.5, 0.2, 0.0});
    CHECK(pmf.mean() == doctest::Approx(0.3 * 5 + 0.5 * 10 + 0.2 * 20));
    CHECK(pmf.support_min() == 5.0);
    CHECK(pmf.support_max() == 20.0);  // zero-mass atom excluded
}

TEST_CASE("grain distribution validation")
{
    CHECK_THROWS_AS(GrainDistribution::deterministic(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::deterministic(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::uniform(6.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::uniform(0.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::pmf({1.0, 2.0}, {0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::pmf({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::pmf({1.0, 2.0}, {1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(GrainDistribution::pmf({}, {}), std::invalid_argument);
    CHECK_NOTHROW(GrainDistribution::uniform(5.0, 5.0));
    CHECK_NOTHROW(GrainDistribution::pmf({1.0, 2.0}, {0.1 + 0.2, 0.7}));
}

TEST_CASE("grain samples follow the law")
{
    SplitMix64 rng(3);
    const auto pmf = GrainDistribution::pmf({5.0, 10.0, 20.0}, {0.3, 0.5, 0.2});
    std::array<int, 3> counts{};
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double v = pmf.sample(rng);
        counts[v == 5.0 ? 0 : v == 10.0 ? 1 : 2]++;
    }
    const double p[] = {0.3, 0.5, 0.2};
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(counts[k] / double(n) - p[k]) < 4 * std::sqrt(p[k] * (1 - p[k]) / n));

    const auto uni = GrainDistribution::uniform(5.0, 15.0);
    double sum = 0;
    for (int k = 0; k < n; ++k) {
        const double v = uni.sample(rng);
        REQUIRE(v >= 5.0);
        REQUIRE(v <= 15.0);
        sum += v;
    }
    CHECK(std::abs(sum / n - 10.0) < 4 * std::sqrt(100.0 / 12 / n));
}

TEST_CASE("sampling window")
{
    const BlockageModelParams p{1e-4, GrainDistribution::deterministic(10), GrainDistribution::deterministic(10)};
    CHECK(sampling_window({200, 20}, p) == Window{-5, 205, -15, 15});
    CHECK(sampling_window({200, 0}, p) == Window{-5, 205, -5, 5});
    CHECK(sampling_window({200, 20}, p).area() == doctest::Approx(6300.0));

    const BlockageModelParams tiny{1e-4, GrainDistribution::deterministic(1e-12), GrainDistribution::deterministic(1e-12)};
    const Window w = sampling_window({200, 20}, tiny);
    CHECK(w.x_lo == doctest::Approx(0.0));
    CHECK(w.x_hi == doctest::Approx(200.0));
    CHECK(w.y_hi == doctest::Approx(10.0));

    // A grain centered just outside the window cannot meet the strip; just inside it can.
    const Strip strip{200, 20};
    const double eps = 1e-9;
    const AxisRect left_out{-5 - eps, 0, 5, 5}, top_out{100, 15 + eps, 5, 5};
    const AxisRect left_in{-5 + eps, 0, 5, 5}, top_in{100, 15 - eps, 5, 5};
    auto meets = [&](const AxisRect& r) {
        return r.right() >= 0 && r.left() <= strip.d && r.top() >= -strip.half_height() &&
               r.bottom() <= strip.half_height();
    };
    CHECK_FALSE(meets(left_out));
    CHECK_FALSE(meets(top_out));
    CHECK(meets(left_in));
    CHECK(meets(top_in));
}

TEST_CASE("sample_field basics")
{
    const LinkGeometry link{200, 20};
    const BlockageModelParams none{0.0, GrainDistribution::deterministic(10), GrainDistribution::deterministic(10)};
    CHECK(sample_field(none, link, 1).obstacles.empty());

    const BlockageModelParams p{1e-3, GrainDistribution::uniform(5, 15), GrainDistribution::uniform(5, 15)};
    const ObstacleField a = sample_field(p, link, 77);
    const ObstacleField b = sample_field(p, link, 77);
    CHECK(a.obstacles == b.obstacles);
    CHECK(a.seed == 77);
    CHECK(sample_field(p, link, 78).obstacles != a.obstacles);
    for (const AxisRect& r : a.obstacles) {
        CHECK(a.window.contains({r.cx, r.cy}));
        CHECK(r.half_w >= 2.5);
        CHECK(r.half_w <= 7.5);
    }
}

TEST_CASE("obstacle count is Poisson with mean lambda * |window|")
{
    const BlockageModelParams p{1e-3, GrainDistribution::deterministic(10), GrainDistribution::deterministic(10)};
    const LinkGeometry link{200, 20};
    const int seeds = 10000;
    double sum = 0.0;
    for (int s = 0; s < seeds; ++s)
        sum += double(sample_field(p, link, mix(1, s)).obstacles.size());
    const double mean = sum / seeds;
    CHECK(std::abs(mean - 6.3) <= 3 * std::sqrt(6.3 / seeds));
}

TEST_CASE("indoor probability matches the vacancy of the Boolean model")
{
    CHECK_FALSE(is_indoor(Point{0, 0}, ObstacleField{}));
    const AxisRect r{3, 4, 1, 1};
    CHECK(is_indoor(Point{3, 4}, std::vector<AxisRect>{r}));

    const BlockageModelParams p{1e-4, GrainDistribution::deterministic(10), GrainDistribution::deterministic(10)};
    const LinkGeometry link{200, 0};
    const int seeds = 100000;
    int indoor = 0;
    for (int s = 0; s < seeds; ++s)
        indoor += is_indoor(Point{0, 0}, sample_field(p, link, mix(2, s)));
    const double expected = 1 - std::exp(-0.01);
    CHECK(expected == doctest::Approx(0.00995).epsilon(1e-3));
    CHECK(std::abs(indoor / double(seeds) - expected) <= 3 * std::sqrt(expected * (1 - expected) / seeds));
}

TEST_CASE("size-class thinning gives independent Poisson counts")
{
    // W uniform on [5,15) split at 10; L a three-atom pmf: six size classes.
    const BlockageModelParams p{1e-3, GrainDistribution::uniform(5, 15),
                                GrainDistribution::pmf({5, 10, 15}, {0.3, 0.5, 0.2})};
    const LinkGeometry link{200, 20};
    const double area = sampling_window(link, p).area();
    const double pw[] = {0.5, 0.5};
    const double pl[] = {0.3, 0.5, 0.2};

    const int seeds = 10000;
    std::array<double, 6> sum{}, sum_sq{};
    for (int s = 0; s < seeds; ++s) {
        std::array<int, 6> c{};
        for (const AxisRect& r : sample_field(p, link, mix(4, s)).obstacles) {
            const int i = 2 * r.half_w < 10 ? 0 : 1;
            const double l = 2 * r.half_l;
            const int j = l == 5 ? 0 : l == 10 ? 1 : 2;
            c[3 * i + j]++;
        }
        for (int k = 0; k < 6; ++k) {
            sum[k] += c[k];
            sum_sq[k] += double(c[k]) * c[k];
        }
    }
    double chi2 = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            const int k = 3 * i + j;
            const double expected = p.lambda_o * area * pw[i] * pl[j] * seeds;
            chi2 += (sum[k] - expected) * (sum[k] - expected) / expected;
            // Poisson: variance equals mean
            const double m = sum[k] / seeds;
            const double var = sum_sq[k] / seeds - m * m;
            CHECK(var / m == doctest::Approx(1.0).epsilon(0.06));
        }
    // chi-square, 6 degrees of freedom, 0.999 quantile
    CHECK(chi2 < 22.458);
}

TEST_CASE("superposition of two independent fields matches the summed density")
{
    const auto w = GrainDistribution::deterministic(10);
    const BlockageModelParams p1{2e-4, w, w}, p2{3e-4, w, w}, p12{5e-4, w, w};
    const LinkGeometry link{200, 20};
    const int seeds = 10000;
    double s_union = 0, s_union_sq = 0, s_direct = 0;
    for (int s = 0; s < seeds; ++s) {
        const double u = double(sample_field(p1, link, mix(10, s)).obstacles.size() +
                                sample_field(p2, link, mix(11, s)).obstacles.size());
        s_union += u;
        s_union_sq += u * u;
        s_direct += double(sample_field(p12, link, mix(12, s)).obstacles.size());
    }
    const double mean = 5e-4 * 6300;
    const double sigma = std::sqrt(mean / seeds);
    CHECK(std::abs(s_union / seeds - mean) < 4 * sigma);
    CHECK(std::abs(s_direct / seeds - mean) < 4 * sigma);
    const double var = s_union_sq / seeds - (s_union / seeds) * (s_union / seeds);
    CHECK(var / mean == doctest::Approx(1.0).epsilon(0.06));
}

TEST_CASE("derived trial seeds are distinct and stable")
{
    CHECK(mix(1, 0) != mix(1, 1));
    CHECK(mix(1, 0) != mix(2, 0));
    CHECK(mix(42, 7) == mix(42, 7));
    SplitMix64 a(5), b(5);
    for (int k = 0; k < 10; ++k)
        CHECK(a() == b());
}

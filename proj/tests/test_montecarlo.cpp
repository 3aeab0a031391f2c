#include <doctest.h>

#include <cmath>

#include "mmconn/geometry.hpp"
#include "mmconn/montecarlo.hpp"

using namespace mmconn;

namespace {

BlockageModelParams fixed(double lambda, double w, double l)
{
    return {lambda, GrainDistribution::deterministic(w), GrainDistribution::deterministic(l)};
}

bool within(const MCEstimate& e, double target, double sigmas)
{
    const double se = std::sqrt(target * (1 - target) / double(e.n_effective));
    return std::abs(e.mean - target) <= sigmas * se;
}

}  // namespace

TEST_CASE("empty field is always connected")
{
    const auto e = estimate_connectivity(fixed(0, 10, 10), {200, 20}, Condition::unconditional, 1000, 3);
    CHECK(e.mean == 1.0);
    CHECK(e.std_err == 0.0);
    CHECK(e.n_effective == 1000);
    CHECK(e.n_total == 1000);
    CHECK(e.seed == 3);
    CHECK(e.ci_high == 1.0);
    CHECK(e.ci_low < 1.0);
}

TEST_CASE("n must be positive")
{
    CHECK_THROWS_AS(estimate_connectivity(fixed(1e-4, 10, 10), {200, 20}, Condition::unconditional, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("parallel kernels match the serial reference for any thread count")
{
    const BlockageModelParams p{5e-4, GrainDistribution::uniform(4, 16), GrainDistribution::uniform(4, 16)};
    const LinkGeometry link{200, 20};
    for (Condition c : {Condition::unconditional, Condition::src_outdoor, Condition::both_outdoor}) {
        const MCEstimate ref = serial::estimate_connectivity(p, link, c, 3000, 9);
        for (int t : {1, 2, 4})
            CHECK(estimate_connectivity(p, link, c, 3000, 9, {t}) == ref);
    }
    const std::vector<double> kappas{0, 20, 100};
    for (Coupling cp : {Coupling::common, Coupling::independent}) {
        const PairedTrials ref = serial::paired_kappa_trials(p, link, kappas, Condition::unconditional, 2000, 5, cp);
        for (int t : {1, 2, 4}) {
            const PairedTrials par =
                paired_kappa_trials(p, link, kappas, Condition::unconditional, 2000, 5, cp, {t});
            CHECK(par.accepted == ref.accepted);
            CHECK(par.connected == ref.connected);
        }
    }
}

TEST_CASE("kappa = 0 trials equal the LOS indicator trial by trial")
{
    const BlockageModelParams p{1e-3, GrainDistribution::uniform(2, 30), GrainDistribution::uniform(2, 30)};
    const LinkGeometry link{200, 0};
    const Window w = sampling_window(link, p);
    for (std::uint64_t i = 0; i < 5000; ++i)
        REQUIRE(detail::run_trial(p, link, w, Condition::unconditional, mix(4, i)) ==
                detail::los_trial(p, 200, w, mix(4, i)));
    CHECK(estimate_p_los(p, 200, 5000, 4) == estimate_connectivity(p, link, Condition::unconditional, 5000, 4));
}

TEST_CASE("LOS estimate agrees with the closed form")
{
    const auto p = fixed(1e-4, 10, 10);
    const auto e = estimate_p_los(p, 200, 20000, 12);
    CHECK(within(e, p_los(p, 200).value, 4));
}

TEST_CASE("estimates never exceed the bound beyond noise")
{
    const auto p = fixed(5e-4, 10, 10);
    for (double kappa : {0.0, 5.0, 20.0}) {
        const auto e = estimate_connectivity(p, {200, kappa}, Condition::unconditional, 5000, 21);
        const double b = connectivity_upper_bound(p, {200, kappa}).value;
        CHECK(e.mean <= b + 3 * std::sqrt(b * (1 - b) / 5000));
    }
}

TEST_CASE("conditioning on an outdoor source rejects the indoor trials")
{
    const auto p = fixed(2e-3, 10, 10);
    const auto e = estimate_connectivity(p, {200, 20}, Condition::src_outdoor, 20000, 8);
    CHECK(e.n_total == 20000);
    const double accept = std::exp(-2e-3 * 100);
    const double rate = double(e.n_effective) / 20000;
    CHECK(std::abs(rate - accept) <= 4 * std::sqrt(accept * (1 - accept) / 20000));
}

TEST_CASE("zero acceptance is an error, not an estimate of zero")
{
    CHECK_THROWS_AS(estimate_connectivity(fixed(1.0, 10, 10), {200, 20}, Condition::both_outdoor, 10, 1),
                    ZeroAcceptanceError);
    CHECK_THROWS_AS(make_estimate(0, 0, 10, 1), ZeroAcceptanceError);
}

TEST_CASE("Wilson interval invariants")
{
    for (std::uint64_t m : {1ull, 7ull, 100ull, 100000ull})
        for (std::uint64_t s = 0; s <= m; s += std::max<std::uint64_t>(1, m / 13)) {
            const auto e = make_estimate(s, m, m, 0);
            CHECK(e.ci_low >= 0.0);
            CHECK(e.ci_high <= 1.0);
            CHECK(e.ci_low <= e.mean);
            CHECK(e.mean <= e.ci_high);
            CHECK(e.std_err == doctest::Approx(std::sqrt(e.mean * (1 - e.mean) / double(m))));
        }
    // textbook value: 8 of 10 gives [0.4902, 0.9433]
    const auto e = make_estimate(8, 10, 10, 0);
    CHECK(e.ci_low == doctest::Approx(0.4902).epsilon(1e-3));
    CHECK(e.ci_high == doctest::Approx(0.9433).epsilon(1e-3));
}

TEST_CASE("common coupling is monotone in kappa on every trial")
{
    const BlockageModelParams p{1e-3, GrainDistribution::uniform(2, 20), GrainDistribution::uniform(2, 40)};
    const std::vector<double> kappas{0, 5, 20, 100};
    const auto t = paired_kappa_trials(p, {200, 0}, kappas, Condition::unconditional, 4000, 2);
    for (std::size_t k = 1; k < kappas.size(); ++k) {
        CHECK(t.accepted[k] == t.accepted[0]);
        for (std::size_t i = 0; i < 4000; ++i)
            REQUIRE(t.connected[k][i] >= t.connected[k - 1][i]);
    }
    const auto d = paired_difference(t, 2, 0);
    CHECK(d.mean >= 0.0);
    CHECK(d.std_err > 0.0);
    const auto est = summarize(t, 2);
    REQUIRE(est.size() == 4);
    CHECK(est[3].mean - est[0].mean == doctest::Approx(paired_difference(t, 3, 0).mean));
}

TEST_CASE("paired comparison rejects bad kappa lists")
{
    const auto p = fixed(1e-4, 10, 10);
    CHECK_THROWS_AS(paired_kappa_comparison(p, {200, 0}, {}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(paired_kappa_comparison(p, {200, 0}, {20, 0}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(paired_kappa_comparison(p, {200, 0}, {0, 0}, 10, 1), std::invalid_argument);
}

TEST_CASE("independent coupling estimates each window on its own stream")
{
    const auto p = fixed(5e-4, 10, 10);
    const auto ind = paired_kappa_comparison(p, {200, 0}, {0, 20}, 3000, 6, Condition::unconditional,
                                             Coupling::independent);
    for (std::size_t k = 0; k < 2; ++k) {
        const double kappa = k == 0 ? 0 : 20;
        CHECK(ind[k] == estimate_connectivity(p, {200, kappa}, Condition::unconditional, 3000, mix(6, k)));
    }
}

TEST_CASE("common coupling marginals match standalone estimates in distribution")
{
    const auto p = fixed(5e-4, 10, 10);
    const auto pair = paired_kappa_comparison(p, {200, 0}, {0, 20}, 20000, 14);
    const auto solo = estimate_connectivity(p, {200, 20}, Condition::unconditional, 20000, 15);
    const double se = std::hypot(pair[1].std_err, solo.std_err);
    CHECK(std::abs(pair[1].mean - solo.mean) <= 4 * se);
    CHECK(within(pair[0], p_los(p, 200).value, 4));
}

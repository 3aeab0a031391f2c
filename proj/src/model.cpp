#include "mmconn/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace mmconn {

namespace {

void require_positive_length(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string("grain distribution: ") + what +
                                    " must be positive and finite");
}

}  // namespace

GrainDistribution GrainDistribution::deterministic(double value)
{
    require_positive_length(value, "value");
    return GrainDistribution(Deterministic{value});
}

GrainDistribution GrainDistribution::uniform(double lo, double hi)
{
    require_positive_length(lo, "lo");
    require_positive_length(hi, "hi");
    if (lo > hi)
        throw std::invalid_argument("grain distribution: lo must not exceed hi");
    return GrainDistribution(Uniform{lo, hi});
}

GrainDistribution GrainDistribution::pmf(std::vector<double> values, std::vector<double> probs)
{
    if (values.empty() || values.size() != probs.size())
        throw std::invalid_argument("grain distribution: pmf needs equally many values and probs");
    for (double v : values)
        require_positive_length(v, "pmf value");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("grain distribution: pmf probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("grain distribution: pmf probabilities must sum to 1");
    return GrainDistribution(Pmf{std::move(values), std::move(probs)});
}

GrainDistribution::GrainDistribution(Law law) : law_(std::move(law))
{
    if (const auto* det = std::get_if<Deterministic>(&law_)) {
        support_min_ = support_max_ = mean_ = det->value;
    } else if (const auto* uni = std::get_if<Uniform>(&law_)) {
        support_min_ = uni->lo;
        support_max_ = uni->hi;
        mean_ = 0.5 * (uni->lo + uni->hi);
    } else {
        const auto& pmf = std::get<Pmf>(law_);
        support_min_ = std::numeric_limits<double>::infinity();
        support_max_ = 0.0;
        double acc = 0.0;
        cdf_.reserve(pmf.values.size());
        for (std::size_t k = 0; k < pmf.values.size(); ++k) {
            acc += pmf.probs[k];
            cdf_.push_back(acc);
            mean_ += pmf.probs[k] * pmf.values[k];
            if (pmf.probs[k] > 0.0) {
                support_min_ = std::min(support_min_, pmf.values[k]);
                support_max_ = std::max(support_max_, pmf.values[k]);
            }
        }
    }
}

double GrainDistribution::sample(SplitMix64& rng) const
{
    if (const auto* det = std::get_if<Deterministic>(&law_))
        return det->value;
    if (const auto* uni = std::get_if<Uniform>(&law_))
        return rng.uniform(uni->lo, uni->hi);
    const auto& pmf = std::get<Pmf>(law_);
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    auto k = static_cast<std::size_t>(it - cdf_.begin());
    if (k == cdf_.size()) {
        // cdf_.back() fell short of 1 by rounding; take the last atom with mass.
        k = cdf_.size() - 1;
        while (k > 0 && pmf.probs[k] == 0.0)
            --k;
    }
    return pmf.values[k];
}

void BlockageModelParams::validate() const
{
    if (!(lambda_o >= 0.0) || !std::isfinite(lambda_o))
        throw std::invalid_argument("model: lambda_o must be non-negative and finite");
}

void LinkGeometry::validate() const
{
    (void)Strip{d, kappa};
}

Window sampling_window(const LinkGeometry& link, const BlockageModelParams& params)
{
    const double half_w = 0.5 * params.width_dist.support_max();
    const double half_h = 0.5 * (link.kappa + params.length_dist.support_max());
    return {-half_w, link.d + half_w, -half_h, half_h};
}

ObstacleField sample_field(const BlockageModelParams& params, const Window& window, std::uint64_t seed)
{
    ObstacleField field;
    field.window = window;
    field.seed = seed;
    const double mean_count = params.lambda_o * window.area();
    if (!(mean_count > 0.0))
        return field;

    SplitMix64 rng(seed);
    std::poisson_distribution<long long> count_dist(mean_count);
    const long long n = count_dist(rng);
    field.obstacles.reserve(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        AxisRect r;
        r.cx = rng.uniform(window.x_lo, window.x_hi);
        r.cy = rng.uniform(window.y_lo, window.y_hi);
        r.half_w = 0.5 * params.width_dist.sample(rng);
        r.half_l = 0.5 * params.length_dist.sample(rng);
        field.obstacles.push_back(r);
    }
    return field;
}

ObstacleField sample_field(const BlockageModelParams& params, const LinkGeometry& link, std::uint64_t seed)
{
    return sample_field(params, sampling_window(link, params), seed);
}

bool is_indoor(Point p, std::span<const AxisRect> obstacles)
{
    return std::any_of(obstacles.begin(), obstacles.end(),
                       [p](const AxisRect& r) { return point_in_rect(p, r); });
}

bool is_indoor(Point p, const ObstacleField& field)
{
    return is_indoor(p, field.obstacles);
}

}  // namespace mmconn

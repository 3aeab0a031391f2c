#include <algorithm>
#include <cmath>
#include <string>

#include "mmconn/montecarlo.hpp"

namespace mmconn {

MCEstimate make_estimate(std::uint64_t successes, std::uint64_t accepted, std::uint64_t total, std::uint64_t seed,
                         double z)
{
    if (accepted == 0)
        throw ZeroAcceptanceError("no trial out of " + std::to_string(total) +
                                  " met the outdoor condition; increase n");
    MCEstimate e;
    e.n_effective = accepted;
    e.n_total = total;
    e.seed = seed;

    const auto m = static_cast<double>(accepted);
    const double p = static_cast<double>(successes) / m;
    e.mean = p;
    e.std_err = std::sqrt(p * (1.0 - p) / m);

    // Wilson score interval
    const double z2 = z * z;
    const double denom = 1.0 + z2 / m;
    const double center = (p + z2 / (2.0 * m)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m));
    e.ci_low = std::clamp(std::min(center - half, p), 0.0, 1.0);
    e.ci_high = std::clamp(std::max(center + half, p), 0.0, 1.0);
    return e;
}

std::vector<MCEstimate> summarize(const PairedTrials& trials, std::uint64_t seed)
{
    std::vector<MCEstimate> out;
    out.reserve(trials.kappas.size());
    for (std::size_t k = 0; k < trials.kappas.size(); ++k) {
        std::uint64_t acc = 0;
        std::uint64_t hit = 0;
        for (std::size_t i = 0; i < trials.accepted[k].size(); ++i) {
            acc += trials.accepted[k][i];
            hit += trials.connected[k][i];
        }
        out.push_back(make_estimate(hit, acc, trials.accepted[k].size(), seed));
    }
    return out;
}

PairedDifference paired_difference(const PairedTrials& trials, std::size_t hi, std::size_t lo)
{
    const std::size_t n = trials.accepted.at(hi).size();
    std::uint64_t m = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!trials.accepted[hi][i] || !trials.accepted.at(lo)[i])
            continue;
        const double diff = static_cast<double>(trials.connected[hi][i]) - static_cast<double>(trials.connected[lo][i]);
        ++m;
        sum += diff;
        sum_sq += diff * diff;
    }
    if (m == 0)
        throw ZeroAcceptanceError("paired_difference: no trial accepted for both windows");
    PairedDifference out;
    const auto md = static_cast<double>(m);
    out.mean = sum / md;
    const double var = m > 1 ? (sum_sq - md * out.mean * out.mean) / (md - 1.0) : 0.0;
    out.std_err = std::sqrt(std::max(var, 0.0) / md);
    return out;
}

namespace detail {

bool accepts(Condition condition, const ObstacleField& field, const LinkGeometry& link)
{
    switch (condition) {
    case Condition::unconditional:
        return true;
    case Condition::src_outdoor:
        return !is_indoor(link.source(), field);
    case Condition::both_outdoor:
        return !is_indoor(link.source(), field) && !is_indoor(link.destination(), field);
    }
    return false;
}

int run_trial(const BlockageModelParams& params, const LinkGeometry& link, const Window& window, Condition condition,
              std::uint64_t trial_seed)
{
    const ObstacleField field = sample_field(params, window, trial_seed);
    if (!accepts(condition, field, link))
        return 0;
    return free_space_connected(link.strip(), field.obstacles).connected ? 2 : 1;
}

int los_trial(const BlockageModelParams& params, double d, const Window& window, std::uint64_t trial_seed)
{
    const ObstacleField field = sample_field(params, window, trial_seed);
    if (is_indoor(Point{0.0, 0.0}, field) || is_indoor(Point{d, 0.0}, field))
        return 1;
    for (const AxisRect& r : field.obstacles)
        if (horizontal_segment_intersects_rect(0.0, d, r))
            return 1;
    return 2;
}

std::vector<Window> paired_windows(const BlockageModelParams& params, const LinkGeometry& link_base,
                                   const std::vector<double>& kappas, Coupling coupling)
{
    if (kappas.empty())
        throw std::invalid_argument("paired comparison: kappa list must not be empty");
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        LinkGeometry{link_base.d, kappas[k]}.validate();
        if (k > 0 && !(kappas[k] > kappas[k - 1]))
            throw std::invalid_argument("paired comparison: kappa list must be strictly ascending");
    }
    std::vector<Window> windows;
    for (double kappa : kappas) {
        const double k = coupling == Coupling::common ? kappas.back() : kappa;
        windows.push_back(sampling_window(LinkGeometry{link_base.d, k}, params));
    }
    return windows;
}

PairedTrials make_paired_trials(const std::vector<double>& kappas, std::uint64_t n)
{
    PairedTrials out;
    out.kappas = kappas;
    out.accepted.assign(kappas.size(), std::vector<unsigned char>(n, 0));
    out.connected.assign(kappas.size(), std::vector<unsigned char>(n, 0));
    return out;
}

void paired_trial(const BlockageModelParams& params, const LinkGeometry& link_base, const std::vector<double>& kappas,
                  const std::vector<Window>& windows, Condition condition, Coupling coupling, std::uint64_t seed,
                  std::uint64_t i, PairedTrials& out)
{
    if (coupling == Coupling::common) {
        const ObstacleField field = sample_field(params, windows.back(), mix(seed, i));
        const bool ok = accepts(condition, field, link_base);
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            out.accepted[k][i] = ok;
            if (ok)
                out.connected[k][i] = free_space_connected(Strip{link_base.d, kappas[k]}, field.obstacles).connected;
        }
        return;
    }
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        const LinkGeometry link{link_base.d, kappas[k]};
        const int r = run_trial(params, link, windows[k], condition, mix(mix(seed, k), i));
        out.accepted[k][i] = r != 0;
        out.connected[k][i] = r == 2;
    }
}

}  // namespace detail

std::vector<MCEstimate> paired_kappa_comparison(const BlockageModelParams& params, const LinkGeometry& link_base,
                                                const std::vector<double>& kappas, std::uint64_t n, std::uint64_t seed,
                                                Condition condition, Coupling coupling, ExecOptions exec)
{
    auto out = summarize(paired_kappa_trials(params, link_base, kappas, condition, n, seed, coupling, exec), seed);
    if (coupling == Coupling::independent)
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k].seed = mix(seed, k);
    return out;
}

}  // namespace mmconn

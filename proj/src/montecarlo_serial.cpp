// Serial reference estimators, kept for testing the OpenMP kernels.

#include "mmconn/montecarlo.hpp"

namespace mmconn::serial {

MCEstimate estimate_connectivity(const BlockageModelParams& params, const LinkGeometry& link, Condition condition,
                                 std::uint64_t n, std::uint64_t seed)
{
    if (n == 0)
        throw std::invalid_argument("estimator: n must be at least 1");
    params.validate();
    link.validate();
    const Window window = sampling_window(link, params);
    std::uint64_t accepted = 0;
    std::uint64_t connected = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const int r = detail::run_trial(params, link, window, condition, mix(seed, i));
        accepted += r != 0;
        connected += r == 2;
    }
    return make_estimate(connected, accepted, n, seed);
}

PairedTrials paired_kappa_trials(const BlockageModelParams& params, const LinkGeometry& link_base,
                                 const std::vector<double>& kappas, Condition condition, std::uint64_t n,
                                 std::uint64_t seed, Coupling coupling)
{
    if (n == 0)
        throw std::invalid_argument("estimator: n must be at least 1");
    params.validate();
    const auto windows = detail::paired_windows(params, link_base, kappas, coupling);
    PairedTrials out = detail::make_paired_trials(kappas, n);
    for (std::uint64_t i = 0; i < n; ++i)
        detail::paired_trial(params, link_base, kappas, windows, condition, coupling, seed, i, out);
    return out;
}

}  // namespace mmconn::serial

// OpenMP kernels for the Monte-Carlo estimators. Each trial depends only on
// mix(seed, i) and the reduction is over integer counts, so the result is the
// same for any thread count and schedule.

#include "mmconn/montecarlo.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mmconn {

namespace {

int thread_count(ExecOptions exec)
{
#ifdef _OPENMP
    return exec.threads > 0 ? exec.threads : omp_get_max_threads();
#else
    (void)exec;
    return 1;
#endif
}

void require_trials(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("estimator: n must be at least 1");
}

}  // namespace

MCEstimate estimate_connectivity(const BlockageModelParams& params, const LinkGeometry& link, Condition condition,
                                 std::uint64_t n, std::uint64_t seed, ExecOptions exec)
{
    require_trials(n);
    params.validate();
    link.validate();
    const Window window = sampling_window(link, params);
    const auto count = static_cast<long long>(n);

    std::uint64_t accepted = 0;
    std::uint64_t connected = 0;
#pragma omp parallel for num_threads(thread_count(exec)) schedule(dynamic, 256) reduction(+ : accepted, connected)
    for (long long i = 0; i < count; ++i) {
        const int r = detail::run_trial(params, link, window, condition, mix(seed, static_cast<std::uint64_t>(i)));
        accepted += r != 0;
        connected += r == 2;
    }
    return make_estimate(connected, accepted, n, seed);
}

MCEstimate estimate_p_los(const BlockageModelParams& params, double d, std::uint64_t n, std::uint64_t seed,
                          ExecOptions exec)
{
    require_trials(n);
    params.validate();
    const LinkGeometry link{d, 0.0};
    link.validate();
    const Window window = sampling_window(link, params);
    const auto count = static_cast<long long>(n);

    std::uint64_t clear = 0;
#pragma omp parallel for num_threads(thread_count(exec)) schedule(dynamic, 256) reduction(+ : clear)
    for (long long i = 0; i < count; ++i)
        clear += detail::los_trial(params, d, window, mix(seed, static_cast<std::uint64_t>(i))) == 2;
    return make_estimate(clear, n, n, seed);
}

PairedTrials paired_kappa_trials(const BlockageModelParams& params, const LinkGeometry& link_base,
                                 const std::vector<double>& kappas, Condition condition, std::uint64_t n,
                                 std::uint64_t seed, Coupling coupling, ExecOptions exec)
{
    require_trials(n);
    params.validate();
    const std::vector<Window> windows = detail::paired_windows(params, link_base, kappas, coupling);
    PairedTrials out = detail::make_paired_trials(kappas, n);
    const auto count = static_cast<long long>(n);

    // Each trial writes only its own column of `out`.
#pragma omp parallel for num_threads(thread_count(exec)) schedule(dynamic, 256)
    for (long long i = 0; i < count; ++i)
        detail::paired_trial(params, link_base, kappas, windows, condition, coupling, seed,
                             static_cast<std::uint64_t>(i), out);
    return out;
}

}  // namespace mmconn

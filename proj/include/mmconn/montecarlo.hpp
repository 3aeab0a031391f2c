#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmconn/analytics.hpp"
#include "mmconn/model.hpp"

namespace mmconn {

/// Monte-Carlo probability estimate with a Wilson score interval.
struct MCEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n_effective = 0;
    std::uint64_t n_total = 0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t seed = 0;

    friend bool operator==(const MCEstimate&, const MCEstimate&) = default;
};

/// No trial met the outdoor condition; distinct from an estimate of zero.
class ZeroAcceptanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Builds an estimate from integer counts. z = 1.959964 gives a 95% interval.
/// Throws ZeroAcceptanceError when accepted == 0.
MCEstimate make_estimate(std::uint64_t successes, std::uint64_t accepted, std::uint64_t total,
                         std::uint64_t seed, double z = 1.959963984540054);

enum class Coupling { common, independent };

struct ExecOptions {
    /// Worker threads; 0 means the OpenMP default.
    int threads = 0;
};

/// Per-trial outcome of a multi-window comparison: `connected[k][i]` for
/// window k, trial i. Rejected trials have accepted[k][i] == 0 and
/// connected[k][i] == 0. Under common coupling accepted[k] is the same for all k.
struct PairedTrials {
    std::vector<double> kappas;
    std::vector<std::vector<unsigned char>> accepted;
    std::vector<std::vector<unsigned char>> connected;
};

struct PairedDifference {
    double mean = 0.0;
    double std_err = 0.0;
};

/// P(E) for one link, with optional outdoor conditioning by rejection.
/// Trial i uses the field sampled from mix(seed, i).
MCEstimate estimate_connectivity(const BlockageModelParams& params, const LinkGeometry& link, Condition condition,
                                 std::uint64_t n, std::uint64_t seed, ExecOptions exec = {});

/// LOS probability: the kappa = 0 indicator on the same fields as
/// estimate_connectivity with kappa = 0.
MCEstimate estimate_p_los(const BlockageModelParams& params, double d, std::uint64_t n, std::uint64_t seed,
                          ExecOptions exec = {});

/// Per-trial indicators for several windows. With Coupling::common one field
/// per trial is sampled in the window of the largest kappa and tested against
/// every strip; with Coupling::independent window k uses base seed mix(seed, k).
PairedTrials paired_kappa_trials(const BlockageModelParams& params, const LinkGeometry& link_base,
                                 const std::vector<double>& kappas, Condition condition, std::uint64_t n,
                                 std::uint64_t seed, Coupling coupling = Coupling::common, ExecOptions exec = {});

std::vector<MCEstimate> paired_kappa_comparison(const BlockageModelParams& params, const LinkGeometry& link_base,
                                                const std::vector<double>& kappas, std::uint64_t n,
                                                std::uint64_t seed, Condition condition = Condition::unconditional,
                                                Coupling coupling = Coupling::common, ExecOptions exec = {});

std::vector<MCEstimate> summarize(const PairedTrials& trials, std::uint64_t seed);

/// Mean and standard error of indicator(hi) - indicator(lo) over trials
/// accepted for both windows.
PairedDifference paired_difference(const PairedTrials& trials, std::size_t hi, std::size_t lo);

namespace serial {

/// Single-threaded reference implementations used to check the parallel kernels.
MCEstimate estimate_connectivity(const BlockageModelParams& params, const LinkGeometry& link, Condition condition,
                                 std::uint64_t n, std::uint64_t seed);

PairedTrials paired_kappa_trials(const BlockageModelParams& params, const LinkGeometry& link_base,
                                 const std::vector<double>& kappas, Condition condition, std::uint64_t n,
                                 std::uint64_t seed, Coupling coupling = Coupling::common);

}  // namespace serial

namespace detail {

/// Outcome of trial i: 0 = rejected by the condition, 1 = accepted and
/// blocked, 2 = accepted and connected.
int run_trial(const BlockageModelParams& params, const LinkGeometry& link, const Window& window,
              Condition condition, std::uint64_t trial_seed);

bool accepts(Condition condition, const ObstacleField& field, const LinkGeometry& link);

/// LOS indicator for trial i, built from the segment and indoor predicates:
/// 1 = blocked, 2 = clear (same coding as run_trial).
int los_trial(const BlockageModelParams& params, double d, const Window& window, std::uint64_t trial_seed);

/// Trial i of a multi-window comparison; writes accepted[k][i] and connected[k][i].
void paired_trial(const BlockageModelParams& params, const LinkGeometry& link_base, const std::vector<double>& kappas,
                  const std::vector<Window>& windows, Condition condition, Coupling coupling, std::uint64_t seed,
                  std::uint64_t i, PairedTrials& out);

/// Sampling windows for each kappa: all equal to the largest under common
/// coupling, one per kappa otherwise.
std::vector<Window> paired_windows(const BlockageModelParams& params, const LinkGeometry& link_base,
                                   const std::vector<double>& kappas, Coupling coupling);

PairedTrials make_paired_trials(const std::vector<double>& kappas, std::uint64_t n);

}  // namespace detail

}  // namespace mmconn

#pragma once

#include <stdexcept>
#include <string_view>

#include "mmconn/model.hpp"

namespace mmconn {

enum class BoundKind { unconditional, src_outdoor, both_outdoor, p_los, optimal_window };

enum class Condition { unconditional, src_outdoor, both_outdoor };

std::string_view to_string(BoundKind kind);
std::string_view to_string(Condition condition);
/// Throws std::invalid_argument on an unknown name.
Condition parse_condition(std::string_view name);

struct BoundResult {
    double value = 1.0;  // in [0,1]
    BoundKind kind = BoundKind::unconditional;
    /// Set when the raw expression exceeded 1 and was clamped (a vacuous bound).
    bool clamped = false;
};

struct QuadratureSpec {
    double abs_tol = 1e-10;
    int max_refinements = 30;
};

/// Raised when the product trapezoid rule fails to settle within
/// max_refinements doublings. Carries the last two iterates.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double previous, double last);

    double previous() const { return previous_; }
    double last() const { return last_; }

private:
    double previous_;
    double last_;
};

/// Area of the region of obstacle centroids for which a single w x l grain
/// blocks every path in the strip of width kappa between (0,0) and (d,0).
double area_kernel(double w, double l, double d, double kappa);

/// E[A(W, L)] under independent grain laws. Finite sums for atomic laws,
/// seam-split product trapezoid for uniform laws.
double expected_blocking_area(const BlockageModelParams& params, const LinkGeometry& link,
                              const QuadratureSpec& quad = {});

/// Single-obstacle upper bound on the connection probability:
/// exp(-lambda_o * E[A(W, L)]).
BoundResult connectivity_upper_bound(const BlockageModelParams& params, const LinkGeometry& link,
                                     const QuadratureSpec& quad = {});

/// LOS probability exp(-lambda_o E[L] (d + E[W])). Exact, from the means.
BoundResult p_los(const BlockageModelParams& params, double d);

/// Upper bound for fixed-size grains, in closed form.
BoundResult fixed_size_upper_bound(double lambda_o, double w, double l, double d, double kappa);

struct OptimalWindow {
    double kappa_star = 0.0;
    BoundResult bound;
};

/// The window kappa* = l_max maximizing the bound, and the bound attained
/// there, computed from the reduced one-dimensional integral in w.
OptimalWindow optimal_window_bound(const BlockageModelParams& params, double d,
                                   const QuadratureSpec& quad = {});

/// Upper bounds conditioned on the source (or both endpoints) being outdoor.
/// Values above 1 are clamped and flagged.
BoundResult conditional_upper_bound(const BlockageModelParams& params, const LinkGeometry& link,
                                    Condition condition, const QuadratureSpec& quad = {});

}  // namespace mmconn

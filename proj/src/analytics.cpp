#include "mmconn/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace mmconn {

std::string_view to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::unconditional: return "unconditional";
    case BoundKind::src_outdoor: return "src_outdoor";
    case BoundKind::both_outdoor: return "both_outdoor";
    case BoundKind::p_los: return "p_los";
    case BoundKind::optimal_window: return "optimal_window";
    }
    return "unknown";
}

std::string_view to_string(Condition condition)
{
    switch (condition) {
    case Condition::unconditional: return "unconditional";
    case Condition::src_outdoor: return "src_outdoor";
    case Condition::both_outdoor: return "both_outdoor";
    }
    return "unknown";
}

Condition parse_condition(std::string_view name)
{
    if (name == "unconditional")
        return Condition::unconditional;
    if (name == "src_outdoor")
        return Condition::src_outdoor;
    if (name == "both_outdoor")
        return Condition::both_outdoor;
    throw std::invalid_argument("unknown condition '" + std::string(name) +
                                "' (expected unconditional, src_outdoor or both_outdoor)");
}

QuadratureError::QuadratureError(double previous, double last)
    : std::runtime_error("quadrature did not converge: last iterates " + std::to_string(previous) +
                         " and " + std::to_string(last)),
      previous_(previous),
      last_(last)
{
}

double area_kernel(double w, double l, double d, double kappa)
{
    if (!(w > 0.0) || !(l > 0.0) || !(d > 0.0))
        throw std::invalid_argument("area_kernel: w, l and d must be positive");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("area_kernel: kappa must be non-negative");
    if (w >= d)
        return (w + d) * l;
    if (l < kappa)
        return 2.0 * w * l;
    return (l - kappa) * (d - w) + 2.0 * w * l;
}

namespace {

struct Node {
    double x;
    double weight;
};

bool is_atomic(const GrainDistribution& dist)
{
    const auto* uni = std::get_if<GrainDistribution::Uniform>(&dist.law());
    return uni == nullptr || uni->lo == uni->hi;
}

// Quadrature nodes for E[f(X)]. Atomic laws give their atoms. A uniform law is
// cut at every seam inside its support and each panel gets a composite
// trapezoid rule with 2^level intervals.
std::vector<Node> nodes_for(const GrainDistribution& dist, std::initializer_list<double> seams, int level)
{
    const auto& law = dist.law();
    if (const auto* det = std::get_if<GrainDistribution::Deterministic>(&law))
        return {{det->value, 1.0}};
    if (const auto* pmf = std::get_if<GrainDistribution::Pmf>(&law)) {
        std::vector<Node> out;
        for (std::size_t k = 0; k < pmf->values.size(); ++k)
            if (pmf->probs[k] > 0.0)
                out.push_back({pmf->values[k], pmf->probs[k]});
        return out;
    }
    const auto& uni = std::get<GrainDistribution::Uniform>(law);
    if (uni.lo == uni.hi)
        return {{uni.lo, 1.0}};

    std::vector<double> cuts{uni.lo, uni.hi};
    for (double s : seams)
        if (s > uni.lo && s < uni.hi)
            cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double density = 1.0 / (uni.hi - uni.lo);
    const std::size_t intervals = std::size_t{1} << level;
    std::vector<Node> out;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double a = cuts[p];
        const double b = cuts[p + 1];
        const double h = (b - a) / static_cast<double>(intervals);
        for (std::size_t k = 0; k <= intervals; ++k) {
            const double x = (k == intervals) ? b : a + h * static_cast<double>(k);
            const double wt = (k == 0 || k == intervals) ? 0.5 * h : h;
            out.push_back({x, wt * density});
        }
    }
    return out;
}

using Kernel2 = std::function<double(double w, double l)>;
using Kernel1 = std::function<double(double w)>;

// E[f(W, L)] with the tolerance applied to lambda * E[f], the dimensionless
// exponent of the bound. f must be bilinear between seams.
double expect2(const GrainDistribution& wd, const GrainDistribution& ld, std::initializer_list<double> w_seams,
               std::initializer_list<double> l_seams, const Kernel2& f, double lambda, const QuadratureSpec& quad)
{
    if (!(quad.abs_tol > 0.0))
        throw std::invalid_argument("quadrature: abs_tol must be positive");
    auto evaluate = [&](int level) {
        const auto wn = nodes_for(wd, w_seams, level);
        const auto ln = nodes_for(ld, l_seams, level);
        double sum = 0.0;
        for (const Node& a : wn)
            for (const Node& b : ln)
                sum += a.weight * b.weight * f(a.x, b.x);
        return sum;
    };
    double previous = evaluate(0);
    if (is_atomic(wd) && is_atomic(ld))
        return previous;
    for (int level = 1; level <= quad.max_refinements; ++level) {
        const double current = evaluate(level);
        if (lambda * std::abs(current - previous) <= quad.abs_tol)
            return current;
        if (level == quad.max_refinements)
            throw QuadratureError(previous, current);
        previous = current;
    }
    throw QuadratureError(previous, previous);
}

double expect1(const GrainDistribution& dist, std::initializer_list<double> seams, const Kernel1& f,
               double lambda, const QuadratureSpec& quad)
{
    return expect2(dist, GrainDistribution::deterministic(1.0), seams, {},
                   [&f](double w, double) { return f(w); }, lambda, quad);
}

BoundResult make_bound(double exponent, BoundKind kind)
{
    BoundResult r;
    r.kind = kind;
    if (exponent > 0.0) {
        r.value = 1.0;
        r.clamped = true;
    } else {
        r.value = std::exp(exponent);
    }
    return r;
}

void validate_inputs(const BlockageModelParams& params, const LinkGeometry& link)
{
    params.validate();
    link.validate();
}

}  // namespace

double expected_blocking_area(const BlockageModelParams& params, const LinkGeometry& link, const QuadratureSpec& quad)
{
    validate_inputs(params, link);
    const double d = link.d;
    const double kappa = link.kappa;
    return expect2(params.width_dist, params.length_dist, {d}, {kappa},
                   [d, kappa](double w, double l) { return area_kernel(w, l, d, kappa); }, params.lambda_o, quad);
}

BoundResult connectivity_upper_bound(const BlockageModelParams& params, const LinkGeometry& link,
                                     const QuadratureSpec& quad)
{
    return make_bound(-params.lambda_o * expected_blocking_area(params, link, quad), BoundKind::unconditional);
}

BoundResult p_los(const BlockageModelParams& params, double d)
{
    params.validate();
    if (!(d > 0.0))
        throw std::invalid_argument("p_los: d must be positive");
    return make_bound(-params.lambda_o * params.length_dist.mean() * (d + params.width_dist.mean()),
                      BoundKind::p_los);
}

BoundResult fixed_size_upper_bound(double lambda_o, double w, double l, double d, double kappa)
{
    if (!(lambda_o >= 0.0))
        throw std::invalid_argument("fixed_size_upper_bound: lambda_o must be non-negative");
    if (!(w > 0.0) || !(l > 0.0) || !(d > 0.0) || !(kappa >= 0.0))
        throw std::invalid_argument("fixed_size_upper_bound: w, l, d must be positive and kappa non-negative");
    double exponent;
    if (w >= d)
        exponent = -lambda_o * (w + d) * l;
    else if (l < kappa)
        exponent = -lambda_o * 2.0 * w * l;
    else
        exponent = -lambda_o * ((l - kappa) * (d - w) + 2.0 * w * l);
    return make_bound(exponent, BoundKind::unconditional);
}

OptimalWindow optimal_window_bound(const BlockageModelParams& params, double d, const QuadratureSpec& quad)
{
    params.validate();
    if (!(d > 0.0))
        throw std::invalid_argument("optimal_window_bound: d must be positive");
    const double per_unit_length = expect1(
        params.width_dist, {d}, [d](double w) { return w >= d ? w + d : 2.0 * w; }, params.lambda_o, quad);
    OptimalWindow out;
    out.kappa_star = params.length_dist.support_max();
    out.bound = make_bound(-params.lambda_o * params.length_dist.mean() * per_unit_length, BoundKind::optimal_window);
    return out;
}

BoundResult conditional_upper_bound(const BlockageModelParams& params, const LinkGeometry& link, Condition condition,
                                    const QuadratureSpec& quad)
{
    validate_inputs(params, link);
    const double mean_area = params.width_dist.mean() * params.length_dist.mean();
    const double lambda = params.lambda_o;
    const double d = link.d;
    const double kappa = link.kappa;
    switch (condition) {
    case Condition::unconditional:
        return connectivity_upper_bound(params, link, quad);
    case Condition::src_outdoor:
        return make_bound(lambda * mean_area - lambda * expected_blocking_area(params, link, quad),
                          BoundKind::src_outdoor);
    case Condition::both_outdoor: {
        const double augmented = expect2(
            params.width_dist, params.length_dist, {d}, {kappa},
            [d, kappa](double w, double l) {
                return area_kernel(w, l, d, kappa) + (w >= d ? (w - d) * l : 0.0);
            },
            lambda, quad);
        return make_bound(2.0 * lambda * mean_area - lambda * augmented, BoundKind::both_outdoor);
    }
    }
    throw std::invalid_argument("conditional_upper_bound: unknown condition");
}

}  // namespace mmconn

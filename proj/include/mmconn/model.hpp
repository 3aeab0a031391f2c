#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mmconn/geometry.hpp"
#include "mmconn/rng.hpp"

namespace mmconn {

/// Law of one grain dimension (width W or length L), in meters.
///
/// Three kinds are supported: a point mass, a uniform law on [lo, hi] and a
/// finite probability mass function. Every law has a finite, strictly
/// positive support.
class GrainDistribution {
public:
    struct Deterministic {
        double value;
        friend bool operator==(const Deterministic&, const Deterministic&) = default;
    };
    struct Uniform {
        double lo;
        double hi;
        friend bool operator==(const Uniform&, const Uniform&) = default;
    };
    struct Pmf {
        std::vector<double> values;
        std::vector<double> probs;
        friend bool operator==(const Pmf&, const Pmf&) = default;
    };
    using Law = std::variant<Deterministic, Uniform, Pmf>;

    static GrainDistribution deterministic(double value);
    static GrainDistribution uniform(double lo, double hi);
    static GrainDistribution pmf(std::vector<double> values, std::vector<double> probs);

    const Law& law() const { return law_; }

    double support_min() const { return support_min_; }
    double support_max() const { return support_max_; }
    double mean() const { return mean_; }

    double sample(SplitMix64& rng) const;

    friend bool operator==(const GrainDistribution& a, const GrainDistribution& b) { return a.law_ == b.law_; }

private:
    explicit GrainDistribution(Law law);

    Law law_;
    std::vector<double> cdf_;  // pmf only
    double support_min_ = 0.0;
    double support_max_ = 0.0;
    double mean_ = 0.0;
};

struct BlockageModelParams {
    double lambda_o = 0.0;  // obstacles per m^2
    GrainDistribution width_dist = GrainDistribution::deterministic(1.0);
    GrainDistribution length_dist = GrainDistribution::deterministic(1.0);

    /// Throws std::invalid_argument on a negative or non-finite density.
    void validate() const;

    friend bool operator==(const BlockageModelParams&, const BlockageModelParams&) = default;
};

struct LinkGeometry {
    double d = 1.0;
    double kappa = 0.0;

    void validate() const;
    Strip strip() const { return Strip{d, kappa}; }
    Point source() const { return {0.0, 0.0}; }
    Point destination() const { return {d, 0.0}; }

    friend bool operator==(const LinkGeometry&, const LinkGeometry&) = default;
};

struct Window {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
    bool contains(Point p) const { return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi; }

    friend bool operator==(const Window&, const Window&) = default;
};

/// One realization of the Boolean obstacle model restricted to a window.
struct ObstacleField {
    std::vector<AxisRect> obstacles;
    Window window;
    std::uint64_t seed = 0;
};

/// Strip dilated by the largest half-grain extents. A rectangle whose centroid
/// lies outside this window cannot meet the closed strip.
Window sampling_window(const LinkGeometry& link, const BlockageModelParams& params);

/// Samples the Boolean model in `window`: Poisson count, uniform centroids,
/// independent W and L per obstacle. Bit-identical for identical inputs.
ObstacleField sample_field(const BlockageModelParams& params, const Window& window, std::uint64_t seed);

ObstacleField sample_field(const BlockageModelParams& params, const LinkGeometry& link, std::uint64_t seed);

/// Whether `p` is covered by at least one (closed) obstacle.
bool is_indoor(Point p, const ObstacleField& field);
bool is_indoor(Point p, std::span<const AxisRect> obstacles);

}  // namespace mmconn

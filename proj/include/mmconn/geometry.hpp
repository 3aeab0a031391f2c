#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmconn {

/// A point in the plane, in meters. The source sits at (0,0) and the
/// destination at (d,0); the LOS axis is x.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangular obstacle, treated as a closed set.
///
/// `half_w` is the half extent along the LOS axis (x), `half_l` the half
/// extent perpendicular to it (y). A grain of width W and length L has
/// half_w = W/2 and half_l = L/2.
struct AxisRect {
    double cx = 0.0;
    double cy = 0.0;
    double half_w = 0.0;
    double half_l = 0.0;

    double left() const { return cx - half_w; }
    double right() const { return cx + half_w; }
    double bottom() const { return cy - half_l; }
    double top() const { return cy + half_l; }

    friend bool operator==(const AxisRect&, const AxisRect&) = default;
};

/// The relaying strip [0,d] x [-kappa/2, +kappa/2].
struct Strip {
    double d = 0.0;
    double kappa = 0.0;

    Strip() = default;
    Strip(double d_, double kappa_);

    double half_height() const { return 0.5 * kappa; }
    bool contains(Point p) const;
};

struct ConnectivityOutcome {
    bool connected = false;
    /// Present iff connected. Starts at src, ends at dst.
    std::optional<std::vector<Point>> witness;
};

class GridTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closed-set membership.
bool point_in_rect(Point p, const AxisRect& r);

/// Strict membership in the open interior of `r`.
bool point_in_open_rect(Point p, const AxisRect& r);

/// Whether the closed segment y=0, x in [x0,x1] meets the closed rectangle.
bool horizontal_segment_intersects_rect(double x0, double x1, const AxisRect& r);

/// Whether the closed segment [a,b] meets the open interior of `r`.
/// Liang-Barsky clip against the open box.
bool segment_intersects_open_rect(Point a, Point b, const AxisRect& r);

/// Soundness check for a witness polyline: endpoints match, every vertex lies
/// in the closed strip and no segment touches an obstacle's open interior.
bool witness_is_sound(const std::vector<Point>& polyline, const Strip& strip,
                      std::span<const AxisRect> obstacles, Point src, Point dst);

/// Exact free-space connectivity inside the closed strip.
///
/// Free space is the strip minus the open interiors of the obstacles. For
/// kappa > 0 the decision is made on a coordinate-compressed cell grid; for
/// kappa == 0 the strip is a segment and the LOS test decides.
///
/// Throws std::invalid_argument if src or dst lies outside the closed strip.
ConnectivityOutcome free_space_connected(const Strip& strip, std::span<const AxisRect> obstacles,
                                         Point src, Point dst);

/// Connectivity of the canonical link: src=(0,0), dst=(d,0).
ConnectivityOutcome free_space_connected(const Strip& strip, std::span<const AxisRect> obstacles);

struct RasterOptions {
    std::size_t max_cells = std::size_t{200'000'000};
};

/// Uniform-raster cross-check for free_space_connected. Cells are squares of
/// side <= resolution; a cell is blocked iff its center lies in an obstacle.
///
/// Throws std::invalid_argument on resolution <= 0 and GridTooLarge when the
/// raster would exceed `opts.max_cells`.
bool grid_flood_fill_connected(const Strip& strip, std::span<const AxisRect> obstacles, Point src,
                               Point dst, double resolution, RasterOptions opts = {});

namespace detail {

/// The non-uniform grid used by free_space_connected, exposed for tests.
/// Cell (i,j) spans (xs[i], xs[i+1]) x (ys[j], ys[j+1]).
struct CompressedGrid {
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<unsigned char> blocked;  // row-major in j: blocked[j * nx + i]

    std::size_t nx() const { return xs.size() - 1; }
    std::size_t ny() const { return ys.size() - 1; }
    bool is_blocked(std::size_t i, std::size_t j) const { return blocked[j * nx() + i] != 0; }
};

CompressedGrid build_compressed_grid(const Strip& strip, std::span<const AxisRect> obstacles,
                                     Point src, Point dst);

}  // namespace detail

}  // namespace mmconn

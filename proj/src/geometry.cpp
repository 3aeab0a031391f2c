#include "mmconn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

namespace mmconn {

Strip::Strip(double d_, double kappa_) : d(d_), kappa(kappa_)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw std::invalid_argument("strip: d must be positive and finite");
    if (!(kappa >= 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("strip: kappa must be non-negative and finite");
}

bool Strip::contains(Point p) const
{
    return p.x >= 0.0 && p.x <= d && std::abs(p.y) <= half_height();
}

bool point_in_rect(Point p, const AxisRect& r)
{
    return std::abs(p.x - r.cx) <= r.half_w && std::abs(p.y - r.cy) <= r.half_l;
}

bool point_in_open_rect(Point p, const AxisRect& r)
{
    return std::abs(p.x - r.cx) < r.half_w && std::abs(p.y - r.cy) < r.half_l;
}

bool horizontal_segment_intersects_rect(double x0, double x1, const AxisRect& r)
{
    return std::abs(r.cy) <= r.half_l && r.left() <= x1 && r.right() >= x0;
}

bool segment_intersects_open_rect(Point a, Point b, const AxisRect& r)
{
    double t_lo = 0.0;
    double t_hi = 1.0;
    auto clip = [&](double start, double delta, double lo, double hi) {
        if (delta == 0.0)
            return start > lo && start < hi;
        double t0 = (lo - start) / delta;
        double t1 = (hi - start) / delta;
        if (t0 > t1)
            std::swap(t0, t1);
        t_lo = std::max(t_lo, t0);
        t_hi = std::min(t_hi, t1);
        return true;
    };
    if (!clip(a.x, b.x - a.x, r.left(), r.right()))
        return false;
    if (!clip(a.y, b.y - a.y, r.bottom(), r.top()))
        return false;
    // Every bound of the box is open, so the surviving parameter set is
    // non-empty only when the interval is non-degenerate.
    return t_lo < t_hi;
}

bool witness_is_sound(const std::vector<Point>& polyline, const Strip& strip,
                      std::span<const AxisRect> obstacles, Point src, Point dst)
{
    if (polyline.empty() || polyline.front() != src || polyline.back() != dst)
        return false;
    for (const Point& p : polyline)
        if (!strip.contains(p))
            return false;
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k)
        for (const AxisRect& r : obstacles)
            if (segment_intersects_open_rect(polyline[k], polyline[k + 1], r))
                return false;
    if (polyline.size() == 1)
        for (const AxisRect& r : obstacles)
            if (point_in_open_rect(polyline.front(), r))
                return false;
    return true;
}

namespace {

void require_in_strip(const Strip& strip, Point p, const char* what)
{
    if (!strip.contains(p))
        throw std::invalid_argument(std::string("free_space_connected: ") + what +
                                    " lies outside the closed strip");
}

// Indices of the compressed cells along one axis whose closure contains v.
// v is always one of the compression coordinates, so at most two cells touch it.
std::vector<std::size_t> touching_cells(const std::vector<double>& coords, double v)
{
    std::vector<std::size_t> out;
    const std::size_t n = coords.size() - 1;
    auto it = std::lower_bound(coords.begin(), coords.end(), v);
    const auto k = static_cast<std::size_t>(it - coords.begin());
    if (k > 0 && k - 1 < n)
        out.push_back(k - 1);
    if (k < n && coords[k] <= v)
        out.push_back(k);
    return out;
}

ConnectivityOutcome segment_connectivity(std::span<const AxisRect> obstacles, Point src, Point dst)
{
    const double x0 = std::min(src.x, dst.x);
    const double x1 = std::max(src.x, dst.x);
    for (const AxisRect& r : obstacles)
        if (horizontal_segment_intersects_rect(x0, x1, r))
            return {};
    return {true, std::vector<Point>{src, dst}};
}

}  // namespace

namespace detail {

CompressedGrid build_compressed_grid(const Strip& strip, std::span<const AxisRect> obstacles,
                                     Point src, Point dst)
{
    const double y_lo = -strip.half_height();
    const double y_hi = strip.half_height();

    CompressedGrid g;
    g.xs = {0.0, strip.d, src.x, dst.x};
    g.ys = {y_lo, y_hi, src.y, dst.y};
    g.xs.reserve(4 + 2 * obstacles.size());
    g.ys.reserve(4 + 2 * obstacles.size());
    for (const AxisRect& r : obstacles) {
        g.xs.push_back(std::clamp(r.left(), 0.0, strip.d));
        g.xs.push_back(std::clamp(r.right(), 0.0, strip.d));
        g.ys.push_back(std::clamp(r.bottom(), y_lo, y_hi));
        g.ys.push_back(std::clamp(r.top(), y_lo, y_hi));
    }
    for (auto* v : {&g.xs, &g.ys}) {
        std::sort(v->begin(), v->end());
        v->erase(std::unique(v->begin(), v->end()), v->end());
    }

    // Every obstacle edge inside the strip is a grid line, so no open cell
    // straddles an edge: a cell is either inside an obstacle's interior or
    // disjoint from it, and testing the cell center decides which.
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    g.blocked.assign(nx * ny, 0);
    for (const AxisRect& r : obstacles) {
        const double l = std::clamp(r.left(), 0.0, strip.d);
        const double rt = std::clamp(r.right(), 0.0, strip.d);
        const double b = std::clamp(r.bottom(), y_lo, y_hi);
        const double t = std::clamp(r.top(), y_lo, y_hi);
        if (!(l < rt) || !(b < t))
            continue;
        const auto i0 = static_cast<std::size_t>(std::lower_bound(g.xs.begin(), g.xs.end(), l) - g.xs.begin());
        const auto i1 = static_cast<std::size_t>(std::lower_bound(g.xs.begin(), g.xs.end(), rt) - g.xs.begin());
        const auto j0 = static_cast<std::size_t>(std::lower_bound(g.ys.begin(), g.ys.end(), b) - g.ys.begin());
        const auto j1 = static_cast<std::size_t>(std::lower_bound(g.ys.begin(), g.ys.end(), t) - g.ys.begin());
        for (std::size_t j = j0; j < j1; ++j) {
            const double yc = 0.5 * (g.ys[j] + g.ys[j + 1]);
            for (std::size_t i = i0; i < i1; ++i) {
                const Point c{0.5 * (g.xs[i] + g.xs[i + 1]), yc};
                if (point_in_rect(c, r))
                    g.blocked[j * nx + i] = 1;
            }
        }
    }
    return g;
}

}  // namespace detail

ConnectivityOutcome free_space_connected(const Strip& strip, std::span<const AxisRect> obstacles,
                                         Point src, Point dst)
{
    require_in_strip(strip, src, "source");
    require_in_strip(strip, dst, "destination");

    if (strip.kappa == 0.0)
        return segment_connectivity(obstacles, src, dst);

    for (const AxisRect& r : obstacles)
        if (point_in_open_rect(src, r) || point_in_open_rect(dst, r))
            return {};

    const detail::CompressedGrid g = detail::build_compressed_grid(strip, obstacles, src, dst);
    const std::size_t nx = g.nx();
    const std::size_t ny = g.ny();
    const std::size_t none = std::numeric_limits<std::size_t>::max();

    std::vector<std::size_t> parent(nx * ny, none);
    std::vector<unsigned char> is_target(nx * ny, 0);
    std::deque<std::size_t> queue;

    for (std::size_t j : touching_cells(g.ys, dst.y))
        for (std::size_t i : touching_cells(g.xs, dst.x))
            if (!g.is_blocked(i, j))
                is_target[j * nx + i] = 1;
    for (std::size_t j : touching_cells(g.ys, src.y))
        for (std::size_t i : touching_cells(g.xs, src.x)) {
            const std::size_t c = j * nx + i;
            if (!g.is_blocked(i, j) && parent[c] == none) {
                parent[c] = c;
                queue.push_back(c);
            }
        }

    std::size_t reached = none;
    while (!queue.empty()) {
        const std::size_t c = queue.front();
        queue.pop_front();
        if (is_target[c]) {
            reached = c;
            break;
        }
        const std::size_t i = c % nx;
        const std::size_t j = c / nx;
        auto visit = [&](std::size_t n) {
            if (!g.blocked[n] && parent[n] == none) {
                parent[n] = c;
                queue.push_back(n);
            }
        };
        if (i > 0)
            visit(c - 1);
        if (i + 1 < nx)
            visit(c + 1);
        if (j > 0)
            visit(c - nx);
        if (j + 1 < ny)
            visit(c + nx);
    }
    if (reached == none)
        return {};

    // Consecutive cells on the BFS chain share a face, so the segment between
    // their centers stays inside the union of the two free cells.
    std::vector<Point> path{dst};
    for (std::size_t c = reached;; c = parent[c]) {
        const std::size_t i = c % nx;
        const std::size_t j = c / nx;
        path.push_back({0.5 * (g.xs[i] + g.xs[i + 1]), 0.5 * (g.ys[j] + g.ys[j + 1])});
        if (parent[c] == c)
            break;
    }
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    return {true, std::move(path)};
}

ConnectivityOutcome free_space_connected(const Strip& strip, std::span<const AxisRect> obstacles)
{
    return free_space_connected(strip, obstacles, Point{0.0, 0.0}, Point{strip.d, 0.0});
}

bool grid_flood_fill_connected(const Strip& strip, std::span<const AxisRect> obstacles, Point src,
                               Point dst, double resolution, RasterOptions opts)
{
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        throw std::invalid_argument("grid_flood_fill_connected: resolution must be positive");

    const double nx_f = std::ceil(strip.d / resolution);
    const double ny_f = std::max(1.0, std::ceil(strip.kappa / resolution));
    if (nx_f * ny_f > static_cast<double>(opts.max_cells))
        throw GridTooLarge("grid_flood_fill_connected: raster of " + std::to_string(nx_f * ny_f) +
                           " cells exceeds the cap; coarsen the resolution");
    const auto nx = static_cast<std::size_t>(nx_f);
    const auto ny = static_cast<std::size_t>(ny_f);
    const double dx = strip.d / static_cast<double>(nx);
    const double dy = strip.kappa / static_cast<double>(ny);
    const double y0 = -strip.half_height();

    auto x_center = [&](std::size_t i) { return (static_cast<double>(i) + 0.5) * dx; };
    auto y_center = [&](std::size_t j) { return y0 + (static_cast<double>(j) + 0.5) * dy; };

    // Blocked row intervals per column, from the cell-center test.
    struct Interval {
        std::size_t lo, hi;  // inclusive
    };
    std::vector<std::vector<Interval>> blocked(nx);
    for (const AxisRect& r : obstacles) {
        long long i_lo = static_cast<long long>(std::ceil(r.left() / dx - 0.5)) - 1;
        long long i_hi = static_cast<long long>(std::floor(r.right() / dx - 0.5)) + 1;
        i_lo = std::max(i_lo, 0LL);
        i_hi = std::min(i_hi, static_cast<long long>(nx) - 1);
        long long j_lo = 0;
        long long j_hi = static_cast<long long>(ny) - 1;
        if (dy > 0.0) {
            j_lo = std::max(0LL, static_cast<long long>(std::ceil((r.bottom() - y0) / dy - 0.5)) - 1);
            j_hi = std::min(j_hi, static_cast<long long>(std::floor((r.top() - y0) / dy - 0.5)) + 1);
        }
        // Shrink the candidate ranges to exactly the centers inside the rectangle.
        while (i_lo <= i_hi && std::abs(x_center(static_cast<std::size_t>(i_lo)) - r.cx) > r.half_w)
            ++i_lo;
        while (i_hi >= i_lo && std::abs(x_center(static_cast<std::size_t>(i_hi)) - r.cx) > r.half_w)
            --i_hi;
        while (j_lo <= j_hi && std::abs(y_center(static_cast<std::size_t>(j_lo)) - r.cy) > r.half_l)
            ++j_lo;
        while (j_hi >= j_lo && std::abs(y_center(static_cast<std::size_t>(j_hi)) - r.cy) > r.half_l)
            --j_hi;
        if (i_lo > i_hi || j_lo > j_hi)
            continue;
        for (auto i = static_cast<std::size_t>(i_lo); i <= static_cast<std::size_t>(i_hi); ++i)
            blocked[i].push_back({static_cast<std::size_t>(j_lo), static_cast<std::size_t>(j_hi)});
    }

    // Free vertical runs per column; cells of a run are face-connected, so the
    // flood fill can move run to run instead of cell to cell.
    struct Run {
        std::size_t lo, hi;
    };
    std::vector<std::size_t> first_run(nx + 1, 0);
    std::vector<Run> runs;
    for (std::size_t i = 0; i < nx; ++i) {
        first_run[i] = runs.size();
        auto& iv = blocked[i];
        std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::size_t next_free = 0;
        for (const Interval& b : iv) {
            if (b.lo > next_free)
                runs.push_back({next_free, b.lo - 1});
            next_free = std::max(next_free, b.hi + 1);
        }
        if (next_free < ny)
            runs.push_back({next_free, ny - 1});
    }
    first_run[nx] = runs.size();

    auto cell_of = [&](Point p) {
        const auto i = static_cast<std::size_t>(
            std::clamp(std::floor(p.x / dx), 0.0, static_cast<double>(nx - 1)));
        std::size_t j = 0;
        if (dy > 0.0)
            j = static_cast<std::size_t>(
                std::clamp(std::floor((p.y - y0) / dy), 0.0, static_cast<double>(ny - 1)));
        return std::pair{i, j};
    };
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    auto run_of = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = first_run[i]; k < first_run[i + 1]; ++k)
            if (runs[k].lo <= j && j <= runs[k].hi)
                return k;
        return none;
    };

    const auto [si, sj] = cell_of(src);
    const auto [di, dj] = cell_of(dst);
    const std::size_t start = run_of(si, sj);
    const std::size_t goal = run_of(di, dj);
    if (start == none || goal == none)
        return false;

    std::vector<std::size_t> column(runs.size());
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t k = first_run[i]; k < first_run[i + 1]; ++k)
            column[k] = i;

    std::vector<unsigned char> seen(runs.size(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const std::size_t k = stack.back();
        stack.pop_back();
        if (k == goal)
            return true;
        const std::size_t i = column[k];
        for (std::size_t ni : {i - 1, i + 1}) {
            if (ni >= nx)  // wraps for i == 0
                continue;
            for (std::size_t m = first_run[ni]; m < first_run[ni + 1]; ++m) {
                if (runs[m].hi < runs[k].lo)
                    continue;
                if (runs[m].lo > runs[k].hi)
                    break;
                if (!seen[m]) {
                    seen[m] = 1;
                    stack.push_back(m);
                }
            }
        }
    }
    return false;
}

}  // namespace mmconn

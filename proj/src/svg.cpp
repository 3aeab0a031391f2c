#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mmconn/experiment.hpp"

namespace mmconn {

namespace {

constexpr double kWidth = 880.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 240.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
    std::string label;
    std::vector<double> x, y;
    std::vector<double> band_lo, band_hi;  // empty when no band
};

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

double cell_number(const CsvTable& t, std::size_t row, std::size_t col)
{
    const std::string& s = t.rows[row].at(col);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception&) {
    }
    throw PlotError("column " + t.header[col] + ", row " + std::to_string(row + 1) + ": not a number: '" + s + "'");
}

std::size_t require_column(const CsvTable& t, const std::string& name)
{
    const auto c = t.column(name);
    if (!c)
        throw PlotError("missing column '" + name + "'");
    return *c;
}

std::vector<double> nice_ticks(double lo, double hi, bool log_axis)
{
    std::vector<double> ticks;
    if (log_axis) {
        for (double e = std::floor(std::log10(lo)); e <= std::ceil(std::log10(hi)); e += 1.0) {
            const double v = std::pow(10.0, e);
            if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9))
                ticks.push_back(v);
        }
        return ticks;
    }
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
        ticks.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
    return ticks;
}

}  // namespace

std::string render_svg_plot(const std::vector<PlotInput>& inputs, const PlotOptions& opts)
{
    if (inputs.empty())
        throw PlotError("no input CSV");
    if (opts.y_columns.empty())
        throw PlotError("no y column requested");

    std::vector<Series> series;
    for (const PlotInput& in : inputs) {
        const CsvTable& t = in.table;
        const std::size_t xc = require_column(t, opts.x_column);
        std::vector<std::size_t> ycs;
        for (const std::string& y : opts.y_columns)
            ycs.push_back(require_column(t, y));
        if (t.rows.empty())
            throw PlotError("no data rows");
        for (std::size_t k = 0; k < ycs.size(); ++k) {
            Series s;
            const std::string& yname = opts.y_columns[k];
            s.label = in.label.empty() ? yname : (opts.y_columns.size() == 1 ? in.label : in.label + ": " + yname);
            const auto lo = t.column("mc_ci_low");
            const auto hi = t.column("mc_ci_high");
            const auto se = t.column("mc_stderr");
            const bool band = yname == "mc_mean" && ((lo && hi) || se);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                s.x.push_back(cell_number(t, r, xc));
                const double y = cell_number(t, r, ycs[k]);
                s.y.push_back(y);
                if (band) {
                    if (lo && hi) {
                        s.band_lo.push_back(cell_number(t, r, *lo));
                        s.band_hi.push_back(cell_number(t, r, *hi));
                    } else {
                        const double e = 1.959963984540054 * cell_number(t, r, *se);
                        s.band_lo.push_back(y - e);
                        s.band_hi.push_back(y + e);
                    }
                }
            }
            series.push_back(std::move(s));
        }
    }

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const Series& s : series) {
        for (double v : s.x) {
            if (opts.log_x && !(v > 0.0))
                throw PlotError("log x axis needs positive values in column '" + opts.x_column + "'");
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
        for (double v : s.band_lo)
            y_lo = std::min(y_lo, v);
        for (double v : s.band_hi)
            y_hi = std::max(y_hi, v);
    }
    if (x_hi == x_lo) {
        x_lo = opts.log_x ? x_lo / 2.0 : x_lo - 1.0;
        x_hi = opts.log_x ? x_hi * 2.0 : x_hi + 1.0;
    }
    if (y_hi == y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto map_x = [&](double v) {
        const double f = opts.log_x ? (std::log10(v) - std::log10(x_lo)) / (std::log10(x_hi) - std::log10(x_lo))
                                    : (v - x_lo) / (x_hi - x_lo);
        return kLeft + f * plot_w;
    };
    auto map_y = [&](double v) { return kTop + (1.0 - (v - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
            << escape(opts.title) << "</text>\n";

    // axes and ticks
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
        << kTop + plot_h << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
        << "\"/>\n</g>\n";
    for (double t : nice_ticks(x_lo, x_hi, opts.log_x)) {
        const double px = map_x(t);
        svg << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px << "\" y2=\"" << kTop + plot_h + 5
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
            << escape(format_number(t)) << "</text>\n";
    }
    for (double t : nice_ticks(y_lo, y_hi, false)) {
        const double py = map_y(t);
        svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\"" << py
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
            << escape(format_number(t)) << "</text>\n";
    }
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">"
        << escape(opts.x_column) << (opts.log_x ? " (log scale)" : "") << "</text>\n"
        << "<text x=\"20\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << kTop + plot_h / 2 << ")\">" << escape(opts.y_columns.size() == 1 ? opts.y_columns.front() : "probability")
        << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const Series& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        std::vector<std::size_t> order(s.x.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
        if (!s.band_lo.empty()) {
            svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
            for (std::size_t i : order)
                svg << map_x(s.x[i]) << "," << map_y(s.band_hi[i]) << " ";
            for (auto it = order.rbegin(); it != order.rend(); ++it)
                svg << map_x(s.x[*it]) << "," << map_y(s.band_lo[*it]) << " ";
            svg << "\"/>\n";
        }
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i : order)
            svg << map_x(s.x[i]) << "," << map_y(s.y[i]) << " ";
        svg << "\"/>\n";

        const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
        const double lx = kLeft + plot_w + 15;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 25 << "\" y2=\"" << ly << "\" stroke=\""
            << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << lx + 32 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mmconn

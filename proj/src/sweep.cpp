#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

#include "mmconn/experiment.hpp"

namespace mmconn {

const std::vector<std::string> kSweepColumns{
    "sweep_var",  "sweep_value", "mc_mean",           "mc_stderr",          "mc_ci_low",
    "mc_ci_high", "n_effective", "bound_thm1",        "bound_cor1_plos",    "bound_src_outdoor",
    "bound_both_outdoor",        "kappa_star",        "bound_cor3",         "seed"};

const std::vector<std::string> kBoundColumns{"sweep_var",         "sweep_value",        "bound_thm1",
                                             "bound_cor1_plos",   "bound_src_outdoor",  "bound_both_outdoor",
                                             "kappa_star",        "bound_cor3"};

std::string_view sweep_variable(const ExperimentConfig& config)
{
    if (config.lambda_o.is_list)
        return "lambda_o";
    if (config.d.is_list)
        return "d";
    return "kappa";
}

namespace {

struct Point3 {
    double lambda_o, d, kappa;
};

std::vector<Point3> sweep_points(const ExperimentConfig& cfg)
{
    std::vector<Point3> pts;
    for (double l : cfg.lambda_o.values)
        for (double d : cfg.d.values)
            for (double k : cfg.kappa.values)
                pts.push_back({l, d, k});
    return pts;
}

void fill_bounds(SweepRow& row, const BlockageModelParams& params, const LinkGeometry& link, const QuadratureSpec& quad)
{
    row.bound_thm1 = connectivity_upper_bound(params, link, quad).value;
    row.bound_cor1_plos = p_los(params, link.d).value;
    row.bound_src_outdoor = conditional_upper_bound(params, link, Condition::src_outdoor, quad).value;
    row.bound_both_outdoor = conditional_upper_bound(params, link, Condition::both_outdoor, quad).value;
    const OptimalWindow opt = optimal_window_bound(params, link.d, quad);
    row.kappa_star = opt.kappa_star;
    row.bound_cor3 = opt.bound.value;
}

std::string context(std::string_view var, double value)
{
    return "sweep point " + std::string(var) + "=" + format_number(value) + ": ";
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, RunOptions opts)
{
    const std::string var(sweep_variable(cfg));
    const std::vector<Point3> pts = sweep_points(cfg);
    std::vector<SweepRow> rows(pts.size());

    for (std::size_t k = 0; k < pts.size(); ++k) {
        const BlockageModelParams params{pts[k].lambda_o, cfg.width_dist, cfg.length_dist};
        const LinkGeometry link{pts[k].d, pts[k].kappa};
        SweepRow& row = rows[k];
        row.sweep_var = var;
        row.sweep_value = var == "lambda_o" ? pts[k].lambda_o : var == "d" ? pts[k].d : pts[k].kappa;
        row.seed = cfg.seed;
        try {
            fill_bounds(row, params, link, cfg.quad);
        } catch (const std::exception& e) {
            throw std::runtime_error(context(var, row.sweep_value) + e.what());
        }
    }
    if (!opts.with_monte_carlo)
        return rows;

    if (var == "kappa") {
        // All windows share the same fields under common coupling.
        std::vector<double> kappas = cfg.kappa.values;
        std::sort(kappas.begin(), kappas.end());
        kappas.erase(std::unique(kappas.begin(), kappas.end()), kappas.end());
        const BlockageModelParams params{cfg.lambda_o.values.front(), cfg.width_dist, cfg.length_dist};
        const LinkGeometry base{cfg.d.values.front(), 0.0};
        std::vector<MCEstimate> est;
        try {
            est = paired_kappa_comparison(params, base, kappas, cfg.n, cfg.seed, cfg.condition, cfg.coupling, opts.exec);
        } catch (const ZeroAcceptanceError& e) {
            throw ZeroAcceptanceError(context("kappa", kappas.front()) + e.what());
        }
        for (SweepRow& row : rows) {
            const auto idx = static_cast<std::size_t>(
                std::lower_bound(kappas.begin(), kappas.end(), row.sweep_value) - kappas.begin());
            row.mc = est[idx];
            row.seed = est[idx].seed;
        }
        return rows;
    }

    for (std::size_t k = 0; k < pts.size(); ++k) {
        const BlockageModelParams params{pts[k].lambda_o, cfg.width_dist, cfg.length_dist};
        const LinkGeometry link{pts[k].d, pts[k].kappa};
        const std::uint64_t seed = cfg.coupling == Coupling::common ? cfg.seed : mix(cfg.seed, k);
        try {
            rows[k].mc = estimate_connectivity(params, link, cfg.condition, cfg.n, seed, opts.exec);
        } catch (const ZeroAcceptanceError& e) {
            throw ZeroAcceptanceError(context(var, rows[k].sweep_value) + e.what());
        }
        rows[k].seed = seed;
    }
    return rows;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string join_header(const std::vector<std::string>& cols)
{
    std::string out;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k)
            out += ',';
        out += cols[k];
    }
    return out + "\n";
}

double to_double(const std::string& s, std::string_view column)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("column " + std::string(column) + ": not a number: '" + s + "'");
    return v;
}

std::uint64_t to_u64(const std::string& s, std::string_view column)
{
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("column " + std::string(column) + ": not an integer: '" + s + "'");
    return v;
}

}  // namespace

std::string format_sweep_csv(const std::vector<SweepRow>& rows)
{
    std::string out = join_header(kSweepColumns);
    for (const SweepRow& r : rows) {
        const double nums[] = {r.sweep_value, r.mc.mean, r.mc.std_err, r.mc.ci_low, r.mc.ci_high};
        out += r.sweep_var;
        for (double v : nums)
            out += "," + format_number(v);
        out += "," + std::to_string(r.mc.n_effective);
        const double bounds[] = {r.bound_thm1,         r.bound_cor1_plos, r.bound_src_outdoor,
                                 r.bound_both_outdoor, r.kappa_star,      r.bound_cor3};
        for (double v : bounds)
            out += "," + format_number(v);
        out += "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string format_bound_csv(const std::vector<SweepRow>& rows)
{
    std::string out = join_header(kBoundColumns);
    for (const SweepRow& r : rows) {
        out += r.sweep_var + "," + format_number(r.sweep_value);
        const double bounds[] = {r.bound_thm1,         r.bound_cor1_plos, r.bound_src_outdoor,
                                 r.bound_both_outdoor, r.kappa_star,      r.bound_cor3};
        for (double v : bounds)
            out += "," + format_number(v);
        out += "\n";
    }
    return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text)
{
    const CsvTable t = parse_csv(text);
    if (t.header != kSweepColumns)
        throw std::runtime_error("unexpected sweep CSV header");
    std::vector<SweepRow> rows;
    for (const auto& f : t.rows) {
        if (f.size() != kSweepColumns.size())
            throw std::runtime_error("sweep CSV row has " + std::to_string(f.size()) + " fields");
        SweepRow r;
        r.sweep_var = f[0];
        r.sweep_value = to_double(f[1], kSweepColumns[1]);
        r.mc.mean = to_double(f[2], kSweepColumns[2]);
        r.mc.std_err = to_double(f[3], kSweepColumns[3]);
        r.mc.ci_low = to_double(f[4], kSweepColumns[4]);
        r.mc.ci_high = to_double(f[5], kSweepColumns[5]);
        r.mc.n_effective = to_u64(f[6], kSweepColumns[6]);
        r.bound_thm1 = to_double(f[7], kSweepColumns[7]);
        r.bound_cor1_plos = to_double(f[8], kSweepColumns[8]);
        r.bound_src_outdoor = to_double(f[9], kSweepColumns[9]);
        r.bound_both_outdoor = to_double(f[10], kSweepColumns[10]);
        r.kappa_star = to_double(f[11], kSweepColumns[11]);
        r.bound_cor3 = to_double(f[12], kSweepColumns[12]);
        r.seed = to_u64(f[13], kSweepColumns[13]);
        r.mc.seed = r.seed;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const
{
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name)
            return k;
    return std::nullopt;
}

CsvTable parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            any = true;
            break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            any = true;
            break;
        case '\r':
            break;
        case '\n':
            if (any || !field.empty()) {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            record.clear();
            field.clear();
            any = false;
            break;
        default:
            field += c;
            any = true;
        }
    }
    if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    CsvTable t;
    if (records.empty())
        return t;
    t.header = std::move(records.front());
    t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return t;
}

CsvTable read_csv_file(const std::string& path)
{
    return parse_csv(read_text_file(path));
}

}  // namespace mmconn

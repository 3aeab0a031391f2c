#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mmconn/analytics.hpp"
#include "mmconn/model.hpp"
#include "mmconn/montecarlo.hpp"

namespace mmconn {

/// A parameter that is either a scalar or a sweep list in the config file.
struct Sweepable {
    std::vector<double> values;
    bool is_list = false;

    static Sweepable scalar(double v) { return {{v}, false}; }
    static Sweepable list(std::vector<double> v) { return {std::move(v), true}; }

    friend bool operator==(const Sweepable&, const Sweepable&) = default;
};

struct ExperimentConfig {
    Sweepable lambda_o = Sweepable::scalar(0.0);
    GrainDistribution width_dist = GrainDistribution::deterministic(10.0);
    GrainDistribution length_dist = GrainDistribution::deterministic(10.0);
    Sweepable d = Sweepable::scalar(200.0);
    Sweepable kappa = Sweepable::scalar(0.0);
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    Condition condition = Condition::unconditional;
    Coupling coupling = Coupling::common;
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;
    QuadratureSpec quad;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

/// Invalid configuration. what() carries "<source>:<line>: <field>: <reason>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, int line, const std::string& message);

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

ExperimentConfig parse_config(std::string_view text, std::string_view source_name = "<config>");
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Which parameter the run sweeps; "kappa" for a run without any list.
std::string_view sweep_variable(const ExperimentConfig& config);

struct SweepRow {
    std::string sweep_var;
    double sweep_value = 0.0;
    MCEstimate mc;
    double bound_thm1 = 1.0;
    double bound_cor1_plos = 1.0;
    double bound_src_outdoor = 1.0;
    double bound_both_outdoor = 1.0;
    double kappa_star = 0.0;
    double bound_cor3 = 1.0;
    std::uint64_t seed = 0;
};

struct RunOptions {
    bool with_monte_carlo = true;
    ExecOptions exec;
};

/// One row per sweep point, in config order. Deterministic given the config.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, RunOptions opts = {});

extern const std::vector<std::string> kSweepColumns;
extern const std::vector<std::string> kBoundColumns;

/// RFC-4180 style, LF endings, 9 significant digits.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);
std::string format_bound_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of `name` in the header, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv_file(const std::string& path);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

class PlotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlotInput {
    CsvTable table;
    std::string label;  // series label prefix; empty for a single input
};

struct PlotOptions {
    std::string x_column;
    std::vector<std::string> y_columns;
    bool log_x = false;
    std::string title;
};

/// Self-contained SVG line chart: one polyline per (input, y column), a
/// shaded band for mc_mean when interval or stderr columns are present,
/// labeled axes and a legend. Throws PlotError on missing columns or an
/// input without data rows.
std::string render_svg_plot(const std::vector<PlotInput>& inputs, const PlotOptions& opts);

}  // namespace mmconn

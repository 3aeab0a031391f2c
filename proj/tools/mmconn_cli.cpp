// mmconn: bounds, Monte-Carlo estimates and sweeps for mmWave relay connectivity.
//
//   mmconn bound    --config cfg.json [--out bounds.csv]
//   mmconn simulate --lambda 1e-4 --d 200 --kappa 20 --width 10 --length 10 --n 100000
//   mmconn sweep    --config cfg.json [--out run.csv] [--svg run.svg] [--seed 7] [--threads 4]
//   mmconn plot     --csv a.csv [--csv b.csv] --x sweep_value --y mc_mean --out fig.svg
//
// Exit status: 0 success, 1 invalid input, 2 runtime failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mmconn/experiment.hpp"

namespace {

using namespace mmconn;

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointFlags {
    std::string config;
    std::optional<double> lambda_o, d, kappa, width, length;
    std::optional<std::uint64_t> n, seed;
    std::optional<std::string> condition;
    int threads = 0;
    std::string out;

    void add_to(CLI::App* cmd, bool estimator)
    {
        cmd->add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
        cmd->add_option("--lambda", lambda_o, "obstacle density [1/m^2]");
        cmd->add_option("--d", d, "source-destination distance [m]");
        cmd->add_option("--kappa", kappa, "relaying route window [m]");
        cmd->add_option("--width", width, "deterministic obstacle width W [m]");
        cmd->add_option("--length", length, "deterministic obstacle length L [m]");
        cmd->add_option("--out", out, "output CSV path (default: stdout)");
        if (estimator) {
            cmd->add_option("--n", n, "number of trials");
            cmd->add_option("--seed", seed, "64-bit seed (overrides the config)");
            cmd->add_option("--condition", condition, "unconditional | src_outdoor | both_outdoor");
            cmd->add_option("--threads", threads, "worker threads (0 = OpenMP default)");
        }
    }

    ExperimentConfig resolve() const
    {
        ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
        try {
            if (lambda_o)
                cfg.lambda_o = Sweepable::scalar(*lambda_o);
            if (d)
                cfg.d = Sweepable::scalar(*d);
            if (kappa)
                cfg.kappa = Sweepable::scalar(*kappa);
            if (width)
                cfg.width_dist = GrainDistribution::deterministic(*width);
            if (length)
                cfg.length_dist = GrainDistribution::deterministic(*length);
            if (n)
                cfg.n = *n;
            if (seed)
                cfg.seed = *seed;
            if (condition)
                cfg.condition = parse_condition(*condition);
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(e.what());
        }
        // Re-validate through the parser so flag overrides get the same checks.
        return parse_config(serialize_config(cfg), config.empty() ? "<flags>" : config);
    }
};

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

std::string sweep_svg(const std::string& csv_text, const ExperimentConfig& cfg)
{
    PlotOptions po;
    po.x_column = "sweep_value";
    po.y_columns = {"mc_mean", "bound_thm1"};
    po.log_x = sweep_variable(cfg) == "lambda_o";
    po.title = "connectivity vs " + std::string(sweep_variable(cfg));
    return render_svg_plot({PlotInput{parse_csv(csv_text), ""}}, po);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mmWave multi-hop connectivity: analytical bounds and Monte-Carlo estimates"};
    app.require_subcommand(1);

    PointFlags bound_flags;
    auto* bound = app.add_subcommand("bound", "evaluate the analytical bounds (no simulation)");
    bound_flags.add_to(bound, false);

    PointFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo estimate at a single parameter point");
    sim_flags.add_to(simulate, true);

    std::string sweep_config, sweep_out, sweep_svg_path;
    std::optional<std::uint64_t> sweep_seed;
    int sweep_threads = 0;
    auto* sweep = app.add_subcommand("sweep", "full experiment from a config file");
    sweep->add_option("--config", sweep_config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_out, "output CSV (overrides outputs.csv)");
    sweep->add_option("--svg", sweep_svg_path, "output SVG chart (overrides outputs.svg)");
    sweep->add_option("--seed", sweep_seed, "64-bit seed (overrides estimator.seed)");
    sweep->add_option("--threads", sweep_threads, "worker threads (0 = OpenMP default)");

    std::vector<std::string> plot_csvs, plot_labels, plot_y;
    std::string plot_x = "sweep_value", plot_out, plot_title;
    bool plot_logx = false;
    auto* plot = app.add_subcommand("plot", "SVG line chart from one or more CSV files");
    plot->add_option("--csv", plot_csvs, "input CSV (repeatable)")->required();
    plot->add_option("--label", plot_labels, "series label per input CSV (repeatable)");
    plot->add_option("--x", plot_x, "x column");
    plot->add_option("--y", plot_y, "y column (repeatable)")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();
    plot->add_option("--title", plot_title, "chart title");
    plot->add_flag("--logx", plot_logx, "logarithmic x axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*bound) {
            const ExperimentConfig cfg = bound_flags.resolve();
            emit(bound_flags.out, format_bound_csv(run_sweep(cfg, {.with_monte_carlo = false})));
        } else if (*simulate) {
            const ExperimentConfig cfg = sim_flags.resolve();
            if (cfg.lambda_o.is_list || cfg.d.is_list || cfg.kappa.is_list)
                throw InvalidInput("simulate runs a single point; use 'sweep' for sweep lists");
            emit(sim_flags.out, format_sweep_csv(run_sweep(cfg, {.exec = {sim_flags.threads}})));
        } else if (*sweep) {
            ExperimentConfig cfg = load_config(sweep_config);
            if (sweep_seed)
                cfg.seed = *sweep_seed;
            const std::string csv = format_sweep_csv(run_sweep(cfg, {.exec = {sweep_threads}}));
            const std::string out = !sweep_out.empty() ? sweep_out : cfg.csv_path.value_or("");
            emit(out, csv);
            const std::string svg = !sweep_svg_path.empty() ? sweep_svg_path : cfg.svg_path.value_or("");
            if (!svg.empty())
                write_text_file(svg, sweep_svg(csv, cfg));
        } else if (*plot) {
            if (!plot_labels.empty() && plot_labels.size() != plot_csvs.size())
                throw InvalidInput("--label must be given once per --csv");
            std::vector<PlotInput> inputs;
            for (std::size_t k = 0; k < plot_csvs.size(); ++k) {
                std::string label = plot_labels.empty() ? (plot_csvs.size() > 1 ? plot_csvs[k] : "") : plot_labels[k];
                inputs.push_back({read_csv_file(plot_csvs[k]), std::move(label)});
            }
            write_text_file(plot_out, render_svg_plot(inputs, {plot_x, plot_y, plot_logx, plot_title}));
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const PlotError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}

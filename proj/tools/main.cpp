#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "salmetrics/harness.hpp"

namespace {

using namespace salmetrics;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> metrics;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
    std::optional<std::string> output_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("-c,--config", o.config_path, "Benchmark config JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-m,--metrics", o.metrics, "Override the config's metric list")
        ->delimiter(',');
    cmd->add_option("-s,--seed", o.seed, "Override the config's seed");
    cmd->add_option("-j,--jobs", o.jobs, "Worker threads (0 = all cores)");
    cmd->add_option("-o,--output-dir", o.output_dir, "Override the config's output_dir");
}

BenchmarkConfig resolve(const CommonOpts& o) {
    BenchmarkConfig cfg = load_config(o.config_path);
    if (!o.metrics.empty()) {
        cfg.metrics.clear();
        for (const std::string& m : o.metrics) {
            const auto id = parse_metric(m);
            if (!id) throw std::runtime_error("unknown metric '" + m + "'");
            cfg.metrics.push_back(*id);
        }
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.jobs) cfg.jobs = *o.jobs;
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    return cfg;
}

void report(const EvalOutcome& outcome) {
    for (const std::string& e : outcome.errors) std::cerr << "warning: " << e << '\n';
}

int finish(const EvalOutcome& outcome) {
    report(outcome);
    if (outcome.records.empty() && !outcome.errors.empty()) {
        std::cerr << "error: no image produced any score\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Saliency model benchmark harness"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string sweep_param;

    CLI::App* cmd_evaluate =
        app.add_subcommand("evaluate", "Score every configured model on the dataset");
    CLI::App* cmd_baselines =
        app.add_subcommand("baselines", "Score the reference models on the dataset");
    CLI::App* cmd_limits =
        app.add_subcommand("limits", "Fit the infinite-observer score per metric");
    CLI::App* cmd_ablate =
        app.add_subcommand("ablate", "Score progressively ablated ground truth");
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Score synthetic two-mode parameter sweeps");
    cmd_sweep->add_option("-p,--param", sweep_param, "Run one sweep only")
        ->check(CLI::IsMember({"variance", "location", "weight"}));
    CLI::App* cmd_correlate =
        app.add_subcommand("correlate", "Rank-correlate the metrics' model orderings");
    CLI::App* cmd_visualize =
        app.add_subcommand("visualize", "Write per-metric visualization maps");

    for (CLI::App* cmd : {cmd_evaluate, cmd_baselines, cmd_limits, cmd_ablate, cmd_sweep,
                          cmd_correlate, cmd_visualize})
        add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        const BenchmarkConfig cfg = resolve(opts);
        std::filesystem::create_directories(cfg.output_dir);

        if (app.got_subcommand(cmd_evaluate)) {
            const EvalOutcome outcome = evaluate(cfg);
            write_scores_csv(outcome.records, cfg.output_dir / "scores.csv");
            write_summary_json(cfg, outcome, nullptr, cfg.output_dir / "summary.json");
            std::cout << "wrote " << (cfg.output_dir / "scores.csv").string() << " ("
                      << outcome.records.size() << " records)\n";
            std::cout << "wrote " << (cfg.output_dir / "summary.json").string() << '\n';
            return finish(outcome);
        }
        if (app.got_subcommand(cmd_baselines)) {
            const EvalOutcome outcome = run_baselines(cfg);
            write_scores_csv(outcome.records, cfg.output_dir / "baselines.csv");
            std::cout << "wrote " << (cfg.output_dir / "baselines.csv").string() << " ("
                      << outcome.records.size() << " records)\n";
            return finish(outcome);
        }
        if (app.got_subcommand(cmd_limits)) {
            const LimitsResult limits = run_limits(cfg);
            write_limits_json(limits, cfg.output_dir / "limits.json");
            for (const std::string& w : limits.warnings) std::cerr << "warning: " << w << '\n';
            for (const auto& [metric, fit] : limits.fits)
                std::cout << metric << ": c=" << fit.c << " [" << fit.ci_low << ", "
                          << fit.ci_high << "]\n";
            std::cout << "wrote " << (cfg.output_dir / "limits.json").string() << '\n';
            return limits.fits.empty() ? 1 : 0;
        }
        if (app.got_subcommand(cmd_ablate)) {
            const std::vector<AblateRow> rows = run_ablate(cfg);
            write_ablate_csv(rows, cfg.output_dir / "ablate.csv");
            std::cout << "wrote " << (cfg.output_dir / "ablate.csv").string() << " ("
                      << rows.size() << " rows)\n";
            return 0;
        }
        if (app.got_subcommand(cmd_sweep)) {
            const std::vector<SweepResult> sweeps = run_sweep(cfg, sweep_param);
            write_sweep_csv(sweeps, cfg.output_dir / "sweep.csv");
            std::cout << "wrote " << (cfg.output_dir / "sweep.csv").string() << '\n';
            return 0;
        }
        if (app.got_subcommand(cmd_correlate)) {
            const RankMatrix matrix = run_correlate(cfg);
            std::ofstream os(cfg.output_dir / "rank_matrix.csv");
            write_matrix_csv(matrix, os);
            std::cout << "wrote " << (cfg.output_dir / "rank_matrix.csv").string() << '\n';
            return 0;
        }
        if (app.got_subcommand(cmd_visualize)) {
            const EvalOutcome outcome = run_visualize(cfg);
            std::cout << "wrote " << (cfg.output_dir / "vis").string() << " ("
                      << outcome.records.size() << " maps)\n";
            return finish(outcome);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

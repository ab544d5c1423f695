#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "salmetrics/analysis.hpp"
#include "salmetrics/baselines.hpp"
#include "salmetrics/config.hpp"
#include "salmetrics/dataset.hpp"

namespace salmetrics {

// Batch evaluation drivers behind the CLI subcommands. All of them load the
// dataset themselves, fan out over images on a bounded worker pool
// (config.jobs), and produce deterministically ordered results for a given
// (config, seed): per-image work units are seeded independently of schedule
// and results are canonically sorted (model, image, metric).

struct EvalOutcome {
    std::vector<ScoreRecord> records;
    // One entry per (model, image) whose map could not be loaded; the run
    // continues past them.
    std::vector<std::string> errors;
};

// Scores every configured model under every configured metric.
EvalOutcome evaluate(const BenchmarkConfig& config);

// Scores the reference models (single_observer, center_prior,
// permutation_control, chance) the same way. model name = baseline name.
EvalOutcome run_baselines(const BenchmarkConfig& config);

struct LimitsResult {
    // Keyed by metric name; the fitted infinite-observer asymptote per
    // metric.
    std::map<std::string, FitResult> fits;
    // Mean split-observer score per (metric, n), the fit's input curve.
    std::vector<std::tuple<std::string, int, double>> curve;
    std::vector<std::string> warnings;
};

// Observer-split limit extrapolation; skipped metrics land in warnings
// (datasets with too few observers, non-converging fits).
LimitsResult run_limits(const BenchmarkConfig& config);

struct AblateRow {
    double fraction = 0.0;
    MetricId metric = MetricId::Sim;
    double mean = 0.0;
    double std_dev = 0.0;
};

// Scores progressively ablated ground-truth densities against the intact
// ground truth, averaged over images. Always includes fraction 0 (the intact
// map) ahead of config.ablate_fractions.
std::vector<AblateRow> run_ablate(const BenchmarkConfig& config);

struct SweepResult {
    std::string parameter;  // "variance" | "location" | "weight"
    std::vector<SweepRow> rows;
};

// Parameter sweeps on the synthetic two-mode stimulus. Which of the three
// parameters run, and their grids, are fixed defaults unless `only` names
// one.
std::vector<SweepResult> run_sweep(const BenchmarkConfig& config, const std::string& only = "");

// evaluate() then rank-correlate the model orderings.
RankMatrix run_correlate(const BenchmarkConfig& config);

// Writes {image_id}.{metric}.png per model directory under
// config.output_dir/vis/{model}/, plus vis_scores.csv with each map's
// aggregated scalar. Metrics: nss, sim, cc, kl, ig (pointwise), emd (flow
// overlay), auc_judd (level sets + ROC csv).
EvalOutcome run_visualize(const BenchmarkConfig& config);

// Output writers (deterministic byte streams for fixed inputs).
void write_scores_csv(const std::vector<ScoreRecord>& records, const std::filesystem::path& path);
void write_summary_json(const BenchmarkConfig& config, const EvalOutcome& outcome,
                        const LimitsResult* limits, const std::filesystem::path& path);
void write_ablate_csv(const std::vector<AblateRow>& rows, const std::filesystem::path& path);
void write_sweep_csv(const std::vector<SweepResult>& sweeps, const std::filesystem::path& path);
void write_limits_json(const LimitsResult& limits, const std::filesystem::path& path);

}  // namespace salmetrics

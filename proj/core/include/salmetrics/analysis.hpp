#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"
#include "salmetrics/metric_id.hpp"
#include "salmetrics/scoring.hpp"

namespace salmetrics {

// Experiments probing how the metrics respond to controlled distortions.

// Zeroes floor(fraction * count) of the above-mean pixels, chosen uniformly
// without replacement; no renormalization, so the result is a deliberately
// deficient map. fraction must lie in [0, 1); a map with no above-mean pixels
// (constant) throws std::invalid_argument.
Grid ablate_false_negatives(const Grid& q_map, double fraction, std::uint64_t seed);

// Percentage of the span between chance and the dataset's empirical limit
// that `score` covers, 100 * (limit-score)/(limit-chance) for higher-better
// metrics and the sign-flipped ratio for lower-better ones, so 0% is the
// limit and 100% is chance either way. limit == chance throws.
double chance_normalized_score(double score, double limit, double chance, bool lower_better);

// Synthetic two-mode stimulus: one fixation at each of (w/3, h/2) and
// (2w/3, h/2), ground-truth density = their blur at sigma of one degree. The
// swept parameter regenerates the prediction per step:
//   Variance  prediction blurred at sigma = value (ground truth at 1 degree)
//   Location  both modes shifted +value pixels in x (rounded; truth at 0)
//   Weight    left-mode mass fraction = value (truth at 0.5)
struct SweepSpec {
    enum class Param { Variance, Location, Weight };

    Param param = Param::Variance;
    double low = 0.0;
    double high = 1.0;
    int steps = 2;
    double ground_truth_value = 0.0;
};

struct SweepRow {
    double param_value = 0.0;
    MetricId metric = MetricId::Sim;
    double score = 0.0;
};

// Evaluates every metric at every step of an evenly spaced grid over
// [low, high] (inclusive; spec.steps points, >= 2). ground_truth_value must
// lie on the grid so the truth itself is one of the evaluated predictions.
std::vector<SweepRow> synthetic_sweep(const SweepSpec& spec, const std::vector<MetricId>& metrics,
                                      int width, int height, const EvalParams& params);

struct ScoreRecord {
    std::string model;
    std::string image;
    MetricId metric = MetricId::Sim;
    double value = 0.0;
};

// Spearman rank correlation between the model orderings two metrics induce.
struct RankMatrix {
    std::vector<MetricId> metrics;
    std::vector<std::vector<double>> rho;  // metrics.size() squared, diagonal 1
};

// Averages value over images per (model, metric), ranks models best-first
// under each metric's polarity, and correlates the rank vectors. Needs >= 3
// models, each scored under every metric of the table; incomplete tables
// throw with the missing cell named.
RankMatrix spearman_rank_matrix(const std::vector<ScoreRecord>& records);

// Columns: metric, then one column per metric id.
void write_matrix_csv(const RankMatrix& m, std::ostream& os);

}  // namespace salmetrics

#pragma once

#include <cstdint>

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"
#include "salmetrics/location_metrics.hpp"
#include "salmetrics/metric_id.hpp"

namespace salmetrics {

// One image's ground truth in both representations: the discrete fixation
// raster the location metrics consume and its blurred, sum-normalized density
// for the distribution metrics.
struct GroundTruth {
    BinaryFixationMap binary;
    Grid dist;
};

GroundTruth make_ground_truth(const FixationSet& fs, int width, int height,
                              const ViewingGeometry& geom);

// Everything score_map needs beyond the maps themselves. shuffle_pool is
// required for sauc, ig_baseline for ig; both stay owned by the caller.
struct EvalParams {
    ViewingGeometry geom;
    double epsilon = kDefaultEpsilon;
    double emd_downscale = 1.0 / 32.0;
    int borji_trials = 100;
    int sauc_trials = 100;
    int sauc_images_per_trial = 10;
    std::uint64_t seed = 0;
    const std::vector<ShuffleSource>* shuffle_pool = nullptr;
    const Grid* ig_baseline = nullptr;
};

// Scores one prediction against one image's ground truth under one metric,
// applying the benchmark conventions: the prediction is resized to the ground
// truth's dims, sum normalization is applied where the metric needs
// probabilistic inputs, and a constant prediction scores 0 under CC and NSS
// (no signal scores at chance). Randomized metrics derive their streams from
// params.seed and the metric id only, so a given (inputs, seed) pair always
// reproduces the same score.
double score_map(MetricId metric, const Grid& P, const GroundTruth& gt, const EvalParams& params);

}  // namespace salmetrics

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"
#include "salmetrics/scoring.hpp"

namespace salmetrics {

// Reference models every dataset supports, and the observer-split machinery
// behind the dataset-specific performance ceiling.

// Anisotropic Gaussian at the image center, stretched to the aspect ratio
// (sigma_y = sigma_frac * height, sigma_x/sigma_y = width/height),
// sum-normalized.
Grid center_prior(int width, int height, double sigma_frac = 1.0 / 6.0);

// Constant map, 1/(width*height) everywhere.
Grid chance_uniform(int width, int height);

// Fixations plus native dims; the minimal per-image handle the baselines and
// the harness share.
struct DatasetImage {
    FixationSet fixations;
    int width = 0;
    int height = 0;
};

// Blurred fixation density of a uniformly drawn *different* image, resized to
// the target dims and renormalized. Throws std::invalid_argument when the
// dataset holds no other image.
Grid permutation_control(const std::string& target_image, int target_w, int target_h,
                         const std::vector<DatasetImage>& dataset, const ViewingGeometry& geom,
                         std::uint64_t seed);

// Blurred density of one observer's fixations alone.
Grid single_observer_map(const FixationSet& fs, std::size_t observer_idx, int width, int height,
                         const ViewingGeometry& geom);

// Mean score of n held-out observers predicting n others: per split, 2n
// observers are drawn without replacement, the first n form the predicting
// group (their blurred density is the prediction) and the next n the test
// group (the ground truth). Splits are independent draws seeded from
// (params.seed, n, split). Requires 2n <= observer count.
double split_observer_score(const FixationSet& fs, int width, int height, int n, MetricId metric,
                            const EvalParams& params, int n_splits = 10);

// Power-law fit f(n) = a * n^b + c of score versus group size, b <= 0 so the
// curve saturates; c is the extrapolated infinite-observer score.
struct FitResult {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double ci_low = 0.0;   // 95% interval on c
    double ci_high = 0.0;
    int n_points = 0;
};

// Box-constrained Levenberg trust-region least squares with multistart
// (a in {-1,1} x b in {-0.5,-1}, c = score at the largest n). Needs >= 3
// distinct n values. c and its interval are clamped into range; always
// ci_low <= c <= ci_high.
FitResult empirical_limit(const std::vector<std::pair<int, double>>& scores,
                          std::pair<double, double> range);

}  // namespace salmetrics

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"
#include "salmetrics/metric_id.hpp"

namespace salmetrics {

// Metrics that treat ground truth as a set of fixated locations. A pixel is
// classified positive when its saliency value is >= the threshold, so ties at
// the threshold fall on the positive side throughout.

struct RocCurve {
    // Parallel arrays, one entry per curve point. thresholds descend
    // (thresholds[0] = +inf anchors the curve at (0,0)); fp and tp are
    // nondecreasing and end at (1,1).
    std::vector<double> thresholds;
    std::vector<double> fp;
    std::vector<double> tp;

    // Trapezoidal area of tp integrated over fp.
    double auc() const;
};

// Columns: threshold,fp_rate,tp_rate.
void write_roc_csv(const RocCurve& curve, std::ostream& os);

// Fixations of one other image, kept with native dims so coordinates can be
// mapped into a differently sized target frame.
struct ShuffleSource {
    std::string image_id;
    int width = 0;
    int height = 0;
    std::vector<Point> points;
};

struct NegativeSampler {
    enum class Mode { Uniform, Shuffled };

    Mode mode = Mode::Uniform;
    // Shuffled mode only: fixations of the other images in the dataset.
    // Callers must exclude the evaluated image.
    std::vector<ShuffleSource> pool;
    int images_per_trial = 10;
    int trials = 100;
    std::uint64_t seed = 0;
};

struct AucResult {
    double score = 0.0;
    RocCurve curve;
};

// ROC area with every distinct saliency value as a threshold. Uniform jitter
// in [0, 1e-7) breaks ties before range normalization; it is far below the
// value spacing of 8-bit-derived maps, so distinct values keep their order.
AucResult auc_judd(const Grid& P, const BinaryFixationMap& Q, std::uint64_t jitter_seed);

// ROC area against uniformly sampled negatives (as many as fixations, drawn
// with replacement over all pixels), thresholds swept 0:0.1:1 on the
// range-normalized map, averaged over sampler.trials trials.
double auc_borji(const Grid& P, const BinaryFixationMap& Q, const NegativeSampler& sampler);

// Shuffled variant: negatives drawn from the pooled fixations of
// images_per_trial other images per trial. Negatives landing on a positive
// pixel are kept. Requires sampler.mode == Shuffled and a non-empty pool.
double sauc(const Grid& P, const BinaryFixationMap& Q, const NegativeSampler& sampler);

// Mean of the variance-normalized saliency over fixated pixels. A constant
// map carries no signal and scores 0 by convention.
double nss(const Grid& P, const BinaryFixationMap& Q);

// Average per-fixation information gain of P over the baseline, in bits.
// Both P and baseline must already be sum-normalized; throws
// std::invalid_argument("probabilistic input required") otherwise.
double information_gain(const Grid& P, const BinaryFixationMap& Q, const Grid& baseline,
                        double epsilon = kDefaultEpsilon);

}  // namespace salmetrics

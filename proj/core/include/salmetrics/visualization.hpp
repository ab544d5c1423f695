#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "salmetrics/emd.hpp"
#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"
#include "salmetrics/io.hpp"
#include "salmetrics/metric_id.hpp"

namespace salmetrics {

// Per-pixel decompositions of the scalar scores, plus renderers. Every
// pointwise map satisfies an exact aggregation identity against its metric
// (see vis_pointwise); the renderers only change presentation.

struct LevelSetMask {
    double threshold = 0.0;
    double tp_rate = 0.0;
    double fp_rate = 0.0;
    Grid mask;               // 0/1, pixels >= threshold
    std::vector<bool> hits;  // per fixation (parallel to LevelSets::fixations)
};

struct LevelSets {
    std::vector<Point> fixations;
    std::vector<LevelSetMask> masks;  // ascending tp_rate, nested
};

// k masks of the jittered prediction thresholded at evenly spaced TP-rate
// quantiles j/(k+1) of its ROC curve. Masks at higher thresholds are subsets
// of those at lower ones.
LevelSets vis_level_sets(const Grid& P, const BinaryFixationMap& Q, int k = 5,
                         std::uint64_t jitter_seed = 0);

// Ground truth for a pointwise map: the fixation raster for the
// location-based metrics, the continuous density for the rest.
using VisTarget = std::variant<Grid, BinaryFixationMap>;

// Signed per-pixel contribution map. Supported metrics and their exact
// aggregation identities (T = pixel count, N = fixated-pixel count):
//   Nss  variance-normalized P on fixated pixels, 0 elsewhere;
//        mean over fixated pixels == nss(P,Q)
//   Sim  min of the sum-normalized maps;  sum == sim(P,Q)
//   Cc   V_i = Pn_i*Qn_i / sqrt(sum_j(Pn_j^2+Qn_j^2)) of the
//        variance-normalized maps;  sqrt(2/T) * sum == cc(P,Q)
//   Kl   per-pixel divergence terms (inputs already sum-normalized);
//        sum == kl(P,Q)
//   Ig   log2(eps+P_i) - log2(eps+baseline_i) on fixated pixels, 0
//        elsewhere;  mean over fixated pixels == information_gain
// Ig requires `baseline`; Nss and Ig take the BinaryFixationMap target, the
// others the Grid target.
Grid vis_pointwise(MetricId metric, const Grid& P, const VisTarget& Q,
                   const Grid* baseline = nullptr, double epsilon = kDefaultEpsilon);

// Where mass left from and arrived at, in cost units: outflow_i = sum_j
// f_ij*d_ij, inflow_j = sum_i f_ij*d_ij, both at the solution's downscaled
// dims. Each map sums to the transport cost, and at an exact optimum their
// supports are disjoint.
struct EmdFlowMaps {
    Grid outflow;
    Grid inflow;
};

EmdFlowMaps vis_emd_flow(const EmdSolution& sol);

// Renderers.

// Sequential dark-to-bright ramp, range-normalized (constant maps render
// mid-ramp).
RgbImage render_heat(const Grid& g);

// Diverging map, symmetric about 0: blue positive, red negative.
RgbImage render_diverging(const Grid& g);

// Outflow green, inflow red, nearest-neighbor upscaled to out_w x out_h.
RgbImage render_emd_flow(const EmdFlowMaps& maps, int out_w, int out_h);

// Masks side by side (single row, 2px gutters), fixations dotted green when
// inside the mask, red when missed.
RgbImage render_level_sets(const LevelSets& ls);

// Display conditioning: histogram-match to a uniform value ramp so different
// models' maps are visually comparable. Never used in scoring.
Grid equalize_for_display(const Grid& g);

}  // namespace salmetrics

#pragma once

#include "salmetrics/grid.hpp"
#include "salmetrics/metric_id.hpp"

namespace salmetrics {

// Metrics that compare the prediction against a continuous fixation density.
// All require matching dims; resize beforehand.

// Histogram intersection: sum of per-pixel minima after both maps are
// sum-normalized internally.
double sim(const Grid& P, const Grid& Q);

// Pearson correlation (population covariance over the pixel population).
// Either input constant: throws std::invalid_argument("zero variance").
double cc(const Grid& P, const Grid& Q);

// Divergence of P from target Q in nats:
//   sum_i Q_i * ln(eps + Q_i / (eps + P_i)).
// Both inputs must already be sum-normalized; throws
// std::invalid_argument("unnormalized input") otherwise.
double kl(const Grid& P, const Grid& Q, double epsilon = kDefaultEpsilon);

// kl(P,Q) + kl(Q,P).
double kl_symmetric(const Grid& P, const Grid& Q, double epsilon = kDefaultEpsilon);

// Pearson correlation of the two maps' pixel ranks (ties get their average
// rank), insensitive to any monotone rescaling of either input.
double spearman_cc_maps(const Grid& P, const Grid& Q);

// Ranks 1..n with ties averaged; shared by spearman_cc_maps and the model
// rank-correlation analysis.
std::vector<double> average_ranks(const std::vector<double>& values);

}  // namespace salmetrics

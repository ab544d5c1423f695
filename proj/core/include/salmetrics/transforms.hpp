#pragma once

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"

namespace salmetrics {

// Ground-truth construction and the normalization/conditioning steps the
// metrics share. All functions return new grids and leave inputs untouched.

// Throws std::invalid_argument("no ground truth fixations") on an empty set
// and on any point outside [0,width) x [0,height).
BinaryFixationMap rasterize_fixations(const FixationSet& fs, int width, int height);

// Separable Gaussian convolution, 1-D kernels normalized to unit sum and
// truncated at radius ceil(4*sigma). Mass falling off the image border is
// simply lost; callers that need a distribution renormalize afterwards.
Grid gaussian_blur(const Grid& g, double sigma);

// Continuous fixation density: blur at sigma = one degree of visual angle,
// then renormalize the whole map to unit sum so border truncation does not
// bias total mass.
Grid blur_to_fixation_map(const BinaryFixationMap& fixmap, const ViewingGeometry& geom);

// Affine rescale to [0, 1]. Constant input has no range to normalize:
// throws std::invalid_argument("degenerate range").
Grid normalize_range(const Grid& g);

// Zero mean, unit population standard deviation.
// Constant input: throws std::invalid_argument("zero variance").
Grid normalize_variance(const Grid& g);

// Scale to unit sum. Non-positive total mass: throws
// std::invalid_argument("zero mass").
Grid normalize_sum(const Grid& g);

// Reshapes g's value histogram to target's: sorts both, assigns target's
// k-th smallest value to the pixel holding g's k-th smallest. Rank order is
// preserved up to ties; requires equal pixel counts.
Grid histogram_match(const Grid& g, const Grid& target);

// Bilinear resample. Downscaling widens the kernel support by the scale
// factor (anti-aliased), which reduces to plain averaging at small integer
// factors; upscaling is standard half-pixel-aligned bilinear interpolation.
Grid resize(const Grid& g, int new_width, int new_height);

}  // namespace salmetrics

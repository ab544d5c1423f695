#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "salmetrics/baselines.hpp"
#include "salmetrics/dataset.hpp"

namespace salmetrics::testutil {

// Synthetic eye-tracking dataset: per image a few points of interest plus a
// center-bias component, fixations sampled around them per observer. The
// construction gives the baselines their expected ordering (observers agree
// on the POIs, the center component is shared across images).
struct SynthSpec {
    int n_images = 30;
    int n_observers = 8;
    int width = 192;
    int height = 144;
    int pois_min = 2;
    int pois_max = 4;
    int fix_per_observer = 15;
    double poi_sigma = 10.0;    // pixel jitter around a POI
    double center_frac = 0.35;  // share of pure center-bias fixations
    std::uint64_t seed = 7;
};

std::vector<DatasetImage> make_synthetic_images(const SynthSpec& spec);

// dir/fixations.csv + dir/sizes.csv in the loader's layout.
void write_dataset(const std::filesystem::path& dir, const std::vector<DatasetImage>& images);

// Model map writers, one {image_id}.bin per image.
void write_gt_density_maps(const std::filesystem::path& dir,
                           const std::vector<DatasetImage>& images, double pixels_per_degree);
void write_center_maps(const std::filesystem::path& dir, const std::vector<DatasetImage>& images,
                       double sigma_frac);
void write_uniform_maps(const std::filesystem::path& dir,
                        const std::vector<DatasetImage>& images);
void write_noise_maps(const std::filesystem::path& dir, const std::vector<DatasetImage>& images,
                      std::uint64_t seed);

// Smooth random map (blurred white noise), strictly positive.
Grid random_smooth_map(int width, int height, double blur_sigma, std::uint64_t seed);

// n distinct fixated pixels drawn without replacement.
BinaryFixationMap random_fixation_map(int width, int height, int n, std::uint64_t seed);

}  // namespace salmetrics::testutil

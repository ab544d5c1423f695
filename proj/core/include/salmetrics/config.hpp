#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "salmetrics/metric_id.hpp"

namespace salmetrics {

struct ModelSpec {
    std::string name;
    std::filesystem::path dir;  // holds one map per image: {image_id}.png|.csv|.bin
};

// Full description of a benchmark run. Loaded from JSON; unknown keys are
// rejected so typos fail loudly. CLI flags override individual fields after
// loading.
struct BenchmarkConfig {
    std::filesystem::path dataset_dir;
    std::vector<ModelSpec> models;
    std::vector<MetricId> metrics = default_metrics();

    double pixels_per_degree = 35.0;
    std::uint64_t seed = 1;
    double epsilon = kDefaultEpsilon;
    double emd_downscale = 1.0 / 32.0;
    double center_sigma_frac = 1.0 / 6.0;

    int borji_trials = 100;
    int sauc_trials = 100;
    int sauc_images_per_trial = 10;
    int splits_per_n = 10;

    // 0 = take SALMETRICS_JOBS from the environment, else all hardware
    // threads.
    int jobs = 0;

    std::filesystem::path output_dir = "out";

    std::vector<double> ablate_fractions = {0.25, 0.5, 0.75};
    int level_sets_k = 5;

    int resolved_jobs() const;
};

BenchmarkConfig load_config(const std::filesystem::path& path);

}  // namespace salmetrics

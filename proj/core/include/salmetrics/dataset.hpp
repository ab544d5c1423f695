#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "salmetrics/baselines.hpp"

namespace salmetrics {

// A loaded dataset: per-image fixations plus native dims, sorted by image_id
// so every run walks images in the same order.
//
// Directory layout:
//   dataset_dir/fixations.csv   (or fixations.json)
//   dataset_dir/sizes.csv       image_id,width,height
//   dataset_dir/stimuli/        fallback for dims: {image_id}.png
// sizes.csv wins when both are present; an image with no size source is an
// error.
struct Dataset {
    std::vector<DatasetImage> images;

    const DatasetImage* find(const std::string& image_id) const;
};

Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace salmetrics

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "salmetrics/fixations.hpp"
#include "salmetrics/grid.hpp"

namespace salmetrics {

// On-disk formats.
//
// Grids:
//   .png  8- or 16-bit grayscale; raw sample values (0..255 / 0..65535) are
//         kept as-is, no rescaling. Color PNGs are rejected.
//   .csv  one text row per pixel row, comma-separated floats.
//   .bin  little-endian: uint32 width, uint32 height, then width*height
//         float64 values row-major.
// Fixations:
//   .csv  header image_id,observer_id,x,y then one 0-indexed point per line.
//   .json array of {"image_id","observer_id","x","y"} objects.
//
// Loaders validate shape and finiteness and throw std::runtime_error with the
// offending file (and line, for text formats) in the message.

Grid load_grid(const std::filesystem::path& path);
Grid load_grid_png(const std::filesystem::path& path);
Grid load_grid_csv(const std::filesystem::path& path);
Grid load_grid_bin(const std::filesystem::path& path);

void save_grid_csv(const Grid& g, const std::filesystem::path& path);
void save_grid_bin(const Grid& g, const std::filesystem::path& path);

// 8-bit grayscale; values are clamped to [0,1] and scaled to 0..255.
void save_gray_png(const Grid& g, const std::filesystem::path& path);

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb> px;

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h), px(static_cast<std::size_t>(w) * h) {}
    Rgb& at(int x, int y) { return px[static_cast<std::size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const { return px[static_cast<std::size_t>(y) * width + x]; }
};

void save_rgb_png(const RgbImage& img, const std::filesystem::path& path);

// PNG dims without decoding the full image (dataset size discovery).
std::pair<int, int> png_dims(const std::filesystem::path& path);

// Grouped by image_id in order of first appearance.
std::vector<FixationSet> load_fixations(const std::filesystem::path& path);
std::vector<FixationSet> load_fixations_csv(const std::filesystem::path& path);
std::vector<FixationSet> load_fixations_json(const std::filesystem::path& path);

}  // namespace salmetrics

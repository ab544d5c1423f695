#pragma once

#include <cstddef>
#include <vector>

namespace salmetrics {

// Dense 2-D scalar field, the common currency of every metric in the library.
// Stored row-major as 64-bit floats. Values are unconstrained reals; loaders
// and ground-truth builders enforce non-negativity at ingestion, but
// variance-normalized maps legitimately go negative afterwards.
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> v;

    Grid() = default;
    Grid(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return v[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }

    std::size_t size() const { return v.size(); }
    bool same_dims(const Grid& o) const { return width == o.width && height == o.height; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

double grid_sum(const Grid& g);
double grid_min(const Grid& g);
double grid_max(const Grid& g);
double grid_mean(const Grid& g);

// Population standard deviation (divides by the pixel count).
double grid_stddev(const Grid& g);

bool grid_is_constant(const Grid& g);

}  // namespace salmetrics

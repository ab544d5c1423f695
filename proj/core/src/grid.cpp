#include "salmetrics/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace salmetrics {

Grid::Grid(int w, int h, double fill) : width(w), height(h) {
    if (w < 0 || h < 0) throw std::invalid_argument("negative grid dims");
    v.assign(static_cast<std::size_t>(w) * h, fill);
}

double grid_sum(const Grid& g) {
    double s = 0.0;
    for (double x : g.v) s += x;
    return s;
}

double grid_min(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    return *std::min_element(g.v.begin(), g.v.end());
}

double grid_max(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    return *std::max_element(g.v.begin(), g.v.end());
}

double grid_mean(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    return grid_sum(g) / static_cast<double>(g.v.size());
}

double grid_stddev(const Grid& g) {
    double mu = grid_mean(g);
    double acc = 0.0;
    for (double x : g.v) {
        double d = x - mu;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(g.v.size()));
}

bool grid_is_constant(const Grid& g) {
    if (g.v.empty()) return true;
    double first = g.v.front();
    for (double x : g.v)
        if (x != first) return false;
    return true;
}

}  // namespace salmetrics

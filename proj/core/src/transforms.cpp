#include "salmetrics/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace salmetrics {

int FixationSet::total_fixations() const {
    int n = 0;
    for (const auto& o : observers) n += static_cast<int>(o.points.size());
    return n;
}

std::vector<Point> FixationSet::all_points() const {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(total_fixations()));
    for (const auto& o : observers) pts.insert(pts.end(), o.points.begin(), o.points.end());
    return pts;
}

BinaryFixationMap rasterize_fixations(const FixationSet& fs, int width, int height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("non-positive raster dims");
    if (fs.total_fixations() == 0) throw std::invalid_argument("no ground truth fixations");

    BinaryFixationMap out;
    out.grid = Grid(width, height, 0.0);
    for (const auto& obs : fs.observers) {
        for (const auto& p : obs.points) {
            if (p.x < 0 || p.x >= width || p.y < 0 || p.y >= height)
                throw std::invalid_argument("fixation out of bounds: (" + std::to_string(p.x) +
                                            "," + std::to_string(p.y) + ") for " +
                                            std::to_string(width) + "x" + std::to_string(height));
            out.grid.at(p.x, p.y) = 1.0;
        }
    }
    out.n_fixations = static_cast<int>(std::count(out.grid.v.begin(), out.grid.v.end(), 1.0));
    return out;
}

namespace {

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(4.0 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k[static_cast<std::size_t>(i + radius)] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

}  // namespace

Grid gaussian_blur(const Grid& g, double sigma) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");

    const std::vector<double> k = gaussian_kernel(sigma);
    const int radius = (static_cast<int>(k.size()) - 1) / 2;

    // Horizontal pass, zero padding outside the image.
    Grid tmp(g.width, g.height, 0.0);
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            double acc = 0.0;
            const int lo = std::max(-radius, -x);
            const int hi = std::min(radius, g.width - 1 - x);
            for (int d = lo; d <= hi; ++d)
                acc += g.at(x + d, y) * k[static_cast<std::size_t>(d + radius)];
            tmp.at(x, y) = acc;
        }
    }

    Grid out(g.width, g.height, 0.0);
    for (int y = 0; y < g.height; ++y) {
        const int lo = std::max(-radius, -y);
        const int hi = std::min(radius, g.height - 1 - y);
        for (int x = 0; x < g.width; ++x) {
            double acc = 0.0;
            for (int d = lo; d <= hi; ++d)
                acc += tmp.at(x, y + d) * k[static_cast<std::size_t>(d + radius)];
            out.at(x, y) = acc;
        }
    }
    return out;
}

Grid blur_to_fixation_map(const BinaryFixationMap& fixmap, const ViewingGeometry& geom) {
    if (fixmap.n_fixations == 0) throw std::invalid_argument("no ground truth fixations");
    return normalize_sum(gaussian_blur(fixmap.grid, geom.pixels_per_degree));
}

Grid normalize_range(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    const double lo = grid_min(g);
    const double hi = grid_max(g);
    if (hi <= lo) throw std::invalid_argument("degenerate range");
    Grid out = g;
    const double span = hi - lo;
    for (double& x : out.v) x = (x - lo) / span;
    return out;
}

Grid normalize_variance(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    const double mu = grid_mean(g);
    const double sd = grid_stddev(g);
    if (sd <= 0.0) throw std::invalid_argument("zero variance");
    Grid out = g;
    for (double& x : out.v) x = (x - mu) / sd;
    return out;
}

Grid normalize_sum(const Grid& g) {
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    const double s = grid_sum(g);
    if (!(s > 0.0)) throw std::invalid_argument("zero mass");
    Grid out = g;
    for (double& x : out.v) x /= s;
    return out;
}

Grid histogram_match(const Grid& g, const Grid& target) {
    if (g.size() != target.size())
        throw std::invalid_argument("histogram_match requires equal pixel counts");

    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return g.v[a] < g.v[b]; });

    std::vector<double> sorted_target = target.v;
    std::sort(sorted_target.begin(), sorted_target.end());

    Grid out = g;
    for (std::size_t rank = 0; rank < order.size(); ++rank) out.v[order[rank]] = sorted_target[rank];
    return out;
}

namespace {

// One resampling axis: for each output index, the clamped source taps and
// their normalized weights. Triangle kernel; support widened by the scale
// factor when shrinking so every source pixel contributes.
struct AxisTaps {
    std::vector<int> first;       // first source index per output index
    std::vector<double> weights;  // taps_per entries per output index
    int taps_per = 0;
};

AxisTaps make_axis(int src, int dst) {
    const double scale = static_cast<double>(src) / dst;
    const double support = scale > 1.0 ? scale : 1.0;
    const int taps = static_cast<int>(std::ceil(2.0 * support)) + 1;

    AxisTaps axis;
    axis.taps_per = taps;
    axis.first.resize(static_cast<std::size_t>(dst));
    axis.weights.assign(static_cast<std::size_t>(dst) * taps, 0.0);

    for (int i = 0; i < dst; ++i) {
        const double center = (i + 0.5) * scale - 0.5;
        const int left = static_cast<int>(std::floor(center - support + 0.5));
        axis.first[static_cast<std::size_t>(i)] = left;
        double sum = 0.0;
        for (int t = 0; t < taps; ++t) {
            const double d = (left + t - center) / support;
            const double w = std::abs(d) < 1.0 ? 1.0 - std::abs(d) : 0.0;
            axis.weights[static_cast<std::size_t>(i) * taps + t] = w;
            sum += w;
        }
        if (sum > 0.0)
            for (int t = 0; t < taps; ++t) axis.weights[static_cast<std::size_t>(i) * taps + t] /= sum;
    }
    return axis;
}

}  // namespace

Grid resize(const Grid& g, int new_width, int new_height) {
    if (new_width <= 0 || new_height <= 0) throw std::invalid_argument("non-positive resize dims");
    if (g.v.empty()) throw std::invalid_argument("empty grid");
    if (new_width == g.width && new_height == g.height) return g;

    const AxisTaps ax = make_axis(g.width, new_width);
    Grid tmp(new_width, g.height, 0.0);
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < new_width; ++x) {
            double acc = 0.0;
            const int left = ax.first[static_cast<std::size_t>(x)];
            for (int t = 0; t < ax.taps_per; ++t) {
                const int sx = std::clamp(left + t, 0, g.width - 1);
                acc += g.at(sx, y) * ax.weights[static_cast<std::size_t>(x) * ax.taps_per + t];
            }
            tmp.at(x, y) = acc;
        }
    }

    const AxisTaps ay = make_axis(g.height, new_height);
    Grid out(new_width, new_height, 0.0);
    for (int y = 0; y < new_height; ++y) {
        const int top = ay.first[static_cast<std::size_t>(y)];
        for (int x = 0; x < new_width; ++x) {
            double acc = 0.0;
            for (int t = 0; t < ay.taps_per; ++t) {
                const int sy = std::clamp(top + t, 0, g.height - 1);
                acc += tmp.at(x, sy) * ay.weights[static_cast<std::size_t>(y) * ay.taps_per + t];
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

}  // namespace salmetrics

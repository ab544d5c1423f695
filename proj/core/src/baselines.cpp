#include "salmetrics/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"

namespace salmetrics {

Grid center_prior(int width, int height, double sigma_frac) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("non-positive dims");
    if (!(sigma_frac > 0.0)) throw std::invalid_argument("sigma_frac must be positive");

    // Anisotropic: sigma scales with each axis, so the blob is stretched to
    // the image's aspect ratio.
    const double sx = sigma_frac * width;
    const double sy = sigma_frac * height;
    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;

    Grid g(width, height, 0.0);
    for (int y = 0; y < height; ++y) {
        const double dy = (y - cy) / sy;
        for (int x = 0; x < width; ++x) {
            const double dx = (x - cx) / sx;
            g.at(x, y) = std::exp(-0.5 * (dx * dx + dy * dy));
        }
    }
    return normalize_sum(g);
}

Grid chance_uniform(int width, int height) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("non-positive dims");
    return Grid(width, height, 1.0 / (static_cast<double>(width) * height));
}

Grid permutation_control(const std::string& target_image, int target_w, int target_h,
                         const std::vector<DatasetImage>& dataset, const ViewingGeometry& geom,
                         std::uint64_t seed) {
    std::vector<const DatasetImage*> others;
    for (const DatasetImage& img : dataset)
        if (img.fixations.image_id != target_image && img.fixations.total_fixations() > 0)
            others.push_back(&img);
    if (others.empty()) throw std::invalid_argument("no other image available");

    Rng rng(seed);
    const DatasetImage& pick = *others[static_cast<std::size_t>(
        rng.uniform_int(static_cast<int>(others.size())))];

    Grid map = blur_to_fixation_map(rasterize_fixations(pick.fixations, pick.width, pick.height),
                                    geom);
    if (map.width != target_w || map.height != target_h)
        map = normalize_sum(resize(map, target_w, target_h));
    return map;
}

Grid single_observer_map(const FixationSet& fs, std::size_t observer_idx, int width, int height,
                         const ViewingGeometry& geom) {
    if (observer_idx >= fs.observers.size())
        throw std::invalid_argument("observer index out of range");
    FixationSet one;
    one.image_id = fs.image_id;
    one.observers.push_back(fs.observers[observer_idx]);
    return blur_to_fixation_map(rasterize_fixations(one, width, height), geom);
}

double split_observer_score(const FixationSet& fs, int width, int height, int n, MetricId metric,
                            const EvalParams& params, int n_splits) {
    const int M = static_cast<int>(fs.observers.size());
    if (n < 1) throw std::invalid_argument("split size must be >= 1");
    if (2 * n > M) throw std::invalid_argument("insufficient observers for split");
    if (n_splits < 1) throw std::invalid_argument("n_splits must be >= 1");

    std::vector<int> idx(static_cast<std::size_t>(M));
    double total = 0.0;
    for (int split = 0; split < n_splits; ++split) {
        Rng rng(mix_seed(mix_seed(params.seed, 0x5017ULL + static_cast<std::uint64_t>(n)),
                         static_cast<std::uint64_t>(split)));
        for (int i = 0; i < M; ++i) idx[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < 2 * n; ++i) {
            const int pick = i + rng.uniform_int(M - i);
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick)]);
        }

        FixationSet predictors, targets;
        predictors.image_id = fs.image_id;
        targets.image_id = fs.image_id;
        for (int i = 0; i < n; ++i)
            predictors.observers.push_back(fs.observers[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        for (int i = n; i < 2 * n; ++i)
            targets.observers.push_back(fs.observers[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);

        const Grid prediction =
            blur_to_fixation_map(rasterize_fixations(predictors, width, height), params.geom);
        const GroundTruth gt = make_ground_truth(targets, width, height, params.geom);
        total += score_map(metric, prediction, gt, params);
    }
    return total / n_splits;
}

namespace {

struct FitPoint {
    double x;
    double y;
};

double fit_ssr(const std::vector<FitPoint>& pts, double a, double b, double c) {
    double ssr = 0.0;
    for (const FitPoint& p : pts) {
        const double r = a * std::pow(p.x, b) + c - p.y;
        ssr += r * r;
    }
    return ssr;
}

// Solves the damped 3x3 normal equations in place. Returns false when the
// system is numerically singular even after damping.
bool solve3(double m[3][3], double rhs[3], double out[3]) {
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[best]][col])) best = r;
        std::swap(perm[col], perm[best]);
        const double pivot = m[perm[col]][col];
        if (std::abs(pivot) < 1e-300) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[perm[r]][col] / pivot;
            for (int cc2 = col; cc2 < 3; ++cc2) m[perm[r]][cc2] -= f * m[perm[col]][cc2];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double acc = rhs[perm[col]];
        for (int cc2 = col + 1; cc2 < 3; ++cc2) acc -= m[perm[col]][cc2] * out[cc2];
        out[col] = acc / m[perm[col]][col];
    }
    return true;
}

struct LmFit {
    double a = 0, b = 0, c = 0;
    double ssr = std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Levenberg-damped Gauss-Newton on f(x) = a*x^b + c with the box constraints
// b <= 0 and c within [c_lo, c_hi] applied by projection after each accepted
// step.
LmFit lm_power_fit(const std::vector<FitPoint>& pts, double a0, double b0, double c0, double c_lo,
                   double c_hi) {
    double a = a0, b = std::min(b0, 0.0), c = std::clamp(c0, c_lo, c_hi);
    double ssr = fit_ssr(pts, a, b, c);
    double lambda = 1e-3;

    for (int iter = 0; iter < 400; ++iter) {
        // Normal equations J^T J and J^T r at the current point.
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double jtr[3] = {0, 0, 0};
        for (const FitPoint& p : pts) {
            const double xb = std::pow(p.x, b);
            const double r = a * xb + c - p.y;
            const double j[3] = {xb, a * xb * std::log(p.x), 1.0};
            for (int u = 0; u < 3; ++u) {
                jtr[u] += j[u] * r;
                for (int w = 0; w < 3; ++w) jtj[u][w] += j[u] * j[w];
            }
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 40 && !stepped; ++attempt) {
            double m[3][3];
            double rhs[3] = {-jtr[0], -jtr[1], -jtr[2]};
            for (int u = 0; u < 3; ++u)
                for (int w = 0; w < 3; ++w)
                    m[u][w] = jtj[u][w] + (u == w ? lambda * (jtj[u][u] > 0 ? jtj[u][u] : 1.0) : 0.0);
            double delta[3];
            if (solve3(m, rhs, delta)) {
                const double na = a + delta[0];
                const double nb = std::min(b + delta[1], 0.0);
                const double nc = std::clamp(c + delta[2], c_lo, c_hi);
                const double nssr = fit_ssr(pts, na, nb, nc);
                if (std::isfinite(nssr) && nssr <= ssr) {
                    const double gain = ssr - nssr;
                    a = na;
                    b = nb;
                    c = nc;
                    ssr = nssr;
                    lambda = std::max(lambda / 3.0, 1e-12);
                    stepped = true;
                    // Converged only when progress stalls with damping
                    // relaxed; large-lambda crawl steps must keep iterating.
                    if (gain <= 1e-15 * (1.0 + ssr) && lambda <= 1e-6) {
                        LmFit fit{a, b, c, ssr, true};
                        return fit;
                    }
                    break;
                }
            }
            lambda *= 4.0;
            if (lambda > 1e12) break;
        }
        if (!stepped) break;
    }
    LmFit fit{a, b, c, ssr, std::isfinite(ssr)};
    return fit;
}

}  // namespace

FitResult empirical_limit(const std::vector<std::pair<int, double>>& scores,
                          std::pair<double, double> range) {
    std::vector<FitPoint> pts;
    std::set<int> distinct;
    for (const auto& [n, y] : scores) {
        if (n < 1) throw std::invalid_argument("group size must be >= 1");
        if (!std::isfinite(y)) throw std::invalid_argument("non-finite score");
        pts.push_back(FitPoint{static_cast<double>(n), y});
        distinct.insert(n);
    }
    if (distinct.size() < 3)
        throw std::invalid_argument("need >= 3 distinct group sizes for the fit");

    const double c_lo = range.first;
    const double c_hi = range.second;

    // c starts at the score observed at the largest n (mean when repeated).
    const int n_max = *distinct.rbegin();
    double c0 = 0.0;
    int c0_count = 0;
    for (const FitPoint& p : pts)
        if (static_cast<int>(p.x) == n_max) {
            c0 += p.y;
            ++c0_count;
        }
    c0 /= c0_count;

    LmFit best;
    for (double a0 : {-1.0, 1.0})
        for (double b0 : {-0.5, -1.0}) {
            const LmFit fit = lm_power_fit(pts, a0, b0, c0, c_lo, c_hi);
            if (fit.ok && fit.ssr < best.ssr) best = fit;
        }
    if (!best.ok) throw std::runtime_error("power fit did not converge");

    // Asymptotic 95% interval on c from the unscaled covariance
    // (J^T J)^{-1} * s^2. With <= 3 points there are no residual dofs and the
    // interval collapses onto c.
    const std::size_t m = pts.size();
    double var_c = 0.0;
    if (m > 3 && best.ssr > 0.0) {
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (const FitPoint& p : pts) {
            const double xb = std::pow(p.x, best.b);
            const double j[3] = {xb, best.a * xb * std::log(p.x), 1.0};
            for (int u = 0; u < 3; ++u)
                for (int w = 0; w < 3; ++w) jtj[u][w] += j[u] * j[w];
        }
        const double s2 = best.ssr / static_cast<double>(m - 3);
        // Invert by solving against the unit vector that extracts the c
        // column; ridge the diagonal if b degenerated to 0 and J lost rank.
        double m3[3][3];
        for (int u = 0; u < 3; ++u)
            for (int w = 0; w < 3; ++w) m3[u][w] = jtj[u][w] + (u == w ? 1e-12 * (1.0 + jtj[u][u]) : 0.0);
        double rhs[3] = {0.0, 0.0, 1.0};
        double col[3];
        if (solve3(m3, rhs, col) && std::isfinite(col[2]) && col[2] > 0.0) var_c = col[2] * s2;
    }

    FitResult out;
    out.a = best.a;
    out.b = best.b;
    out.c = std::clamp(best.c, c_lo, c_hi);
    const double half = 1.96 * std::sqrt(var_c);
    out.ci_low = std::min(out.c, std::clamp(best.c - half, c_lo, c_hi));
    out.ci_high = std::max(out.c, std::clamp(best.c + half, c_lo, c_hi));
    out.n_points = static_cast<int>(m);
    return out;
}

}  // namespace salmetrics

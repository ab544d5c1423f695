#include "salmetrics/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "salmetrics/distribution_metrics.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"

namespace salmetrics {

Grid ablate_false_negatives(const Grid& q_map, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0))
        throw std::invalid_argument("fraction must be in [0, 1)");

    // The accumulated mean of a constant map can round a hair below the
    // shared value, which would mark every pixel above-mean; test constancy
    // directly instead.
    if (grid_is_constant(q_map)) throw std::invalid_argument("no above-mean pixels to ablate");

    const double mean = grid_mean(q_map);
    std::vector<std::size_t> above;
    for (std::size_t i = 0; i < q_map.size(); ++i)
        if (q_map.v[i] > mean) above.push_back(i);
    if (above.empty()) throw std::invalid_argument("no above-mean pixels to ablate");

    const std::size_t quota =
        static_cast<std::size_t>(std::floor(fraction * static_cast<double>(above.size())));

    Grid out = q_map;
    Rng rng(seed);
    for (std::size_t k = 0; k < quota; ++k) {
        const std::size_t pick =
            k + static_cast<std::size_t>(rng.uniform_int(static_cast<int>(above.size() - k)));
        std::swap(above[k], above[pick]);
        out.v[above[k]] = 0.0;
    }
    return out;
}

double chance_normalized_score(double score, double limit, double chance, bool lower_better) {
    if (limit == chance) throw std::invalid_argument("degenerate normalization span");
    if (lower_better) return 100.0 * (score - limit) / (chance - limit);
    return 100.0 * (limit - score) / (limit - chance);
}

namespace {

Grid two_delta_map(int width, int height, int x1, int x2, int y) {
    if (x1 < 0 || x2 >= width || y < 0 || y >= height)
        throw std::invalid_argument("mode center out of bounds");
    Grid g(width, height, 0.0);
    g.at(x1, y) = 1.0;
    g.at(x2, y) = 1.0;
    return g;
}

}  // namespace

std::vector<SweepRow> synthetic_sweep(const SweepSpec& spec, const std::vector<MetricId>& metrics,
                                      int width, int height, const EvalParams& params) {
    if (spec.steps < 2) throw std::invalid_argument("sweep needs >= 2 steps");
    if (!(spec.high > spec.low)) throw std::invalid_argument("empty sweep range");
    if (width < 3 || height < 1) throw std::invalid_argument("stimulus too small");

    const int x1 = width / 3;
    const int x2 = 2 * width / 3;
    const int yc = height / 2;
    const double sigma_gt = params.geom.pixels_per_degree;

    // Ground truth: one fixation on each mode center, density = their blur.
    FixationSet fs;
    fs.image_id = "synthetic";
    fs.observers.push_back(Observer{"o1", {Point{x1, yc}, Point{x2, yc}}});
    const GroundTruth gt = make_ground_truth(fs, width, height, params.geom);

    std::vector<double> values(static_cast<std::size_t>(spec.steps));
    bool on_grid = false;
    for (int i = 0; i < spec.steps; ++i) {
        values[static_cast<std::size_t>(i)] =
            spec.low + (spec.high - spec.low) * i / (spec.steps - 1);
        if (std::abs(values[static_cast<std::size_t>(i)] - spec.ground_truth_value) <= 1e-9)
            on_grid = true;
    }
    if (!on_grid) throw std::invalid_argument("ground_truth_value not on the sweep grid");

    std::vector<SweepRow> rows;
    for (double value : values) {
        Grid prediction;
        switch (spec.param) {
            case SweepSpec::Param::Variance:
                prediction = normalize_sum(
                    gaussian_blur(two_delta_map(width, height, x1, x2, yc), value));
                break;
            case SweepSpec::Param::Location: {
                const int off = static_cast<int>(std::lround(value));
                prediction = normalize_sum(gaussian_blur(
                    two_delta_map(width, height, x1 + off, x2 + off, yc), sigma_gt));
                break;
            }
            case SweepSpec::Param::Weight: {
                if (value < 0.0 || value > 1.0)
                    throw std::invalid_argument("mode weight must be in [0, 1]");
                Grid left(width, height, 0.0), right(width, height, 0.0);
                left.at(x1, yc) = 1.0;
                right.at(x2, yc) = 1.0;
                Grid mix(width, height, 0.0);
                const Grid gl = gaussian_blur(left, sigma_gt);
                const Grid gr = gaussian_blur(right, sigma_gt);
                const double sl = grid_sum(gl), sr = grid_sum(gr);
                for (std::size_t i = 0; i < mix.size(); ++i)
                    mix.v[i] = value * gl.v[i] / sl + (1.0 - value) * gr.v[i] / sr;
                prediction = normalize_sum(mix);
                break;
            }
        }
        for (MetricId m : metrics)
            rows.push_back(SweepRow{value, m, score_map(m, prediction, gt, params)});
    }
    return rows;
}

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a == b) return 1.0;  // identical orderings correlate exactly
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va <= 0.0 || vb <= 0.0) throw std::invalid_argument("zero variance");
    return cov / std::sqrt(va * vb);
}

}  // namespace

RankMatrix spearman_rank_matrix(const std::vector<ScoreRecord>& records) {
    std::set<std::string> model_set;
    std::set<MetricId> metric_set;
    std::map<std::pair<std::string, MetricId>, std::pair<double, int>> cells;
    for (const ScoreRecord& r : records) {
        model_set.insert(r.model);
        metric_set.insert(r.metric);
        auto& cell = cells[{r.model, r.metric}];
        cell.first += r.value;
        cell.second += 1;
    }
    if (model_set.size() < 3)
        throw std::invalid_argument("rank correlation needs >= 3 models");

    const std::vector<std::string> models(model_set.begin(), model_set.end());

    RankMatrix out;
    for (MetricId m : all_metrics())
        if (metric_set.count(m)) out.metrics.push_back(m);

    // Mean score per model under each metric, then best-first ranks.
    std::vector<std::vector<double>> ranks;
    for (MetricId m : out.metrics) {
        std::vector<double> keyed(models.size());
        for (std::size_t i = 0; i < models.size(); ++i) {
            auto it = cells.find({models[i], m});
            if (it == cells.end())
                throw std::invalid_argument("incomplete score table: model '" + models[i] +
                                            "' has no " + std::string(metric_name(m)) + " scores");
            const double mean = it->second.first / it->second.second;
            // average_ranks gives rank 1 to the smallest key, so flip
            // higher-better scores to put the best model first.
            keyed[i] = metric_lower_better(m) ? mean : -mean;
        }
        ranks.push_back(average_ranks(keyed));
    }

    const std::size_t K = out.metrics.size();
    out.rho.assign(K, std::vector<double>(K, 1.0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            out.rho[i][j] = out.rho[j][i] = pearson(ranks[i], ranks[j]);
    return out;
}

void write_matrix_csv(const RankMatrix& m, std::ostream& os) {
    os << "metric";
    for (MetricId id : m.metrics) os << ',' << metric_name(id);
    os << '\n';
    char buf[40];
    for (std::size_t i = 0; i < m.metrics.size(); ++i) {
        os << metric_name(m.metrics[i]);
        for (std::size_t j = 0; j < m.metrics.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.12g", m.rho[i][j]);
            os << ',' << buf;
        }
        os << '\n';
    }
}

}  // namespace salmetrics

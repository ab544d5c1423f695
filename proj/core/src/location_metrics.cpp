#include "salmetrics/location_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"

namespace salmetrics {

namespace {

constexpr double kJitterSpan = 1e-7;

void check_pair(const Grid& P, const BinaryFixationMap& Q) {
    if (!P.same_dims(Q.grid)) throw std::invalid_argument("dimension mismatch");
    if (Q.n_fixations == 0) throw std::invalid_argument("no ground truth fixations");
}

// Range-normalize with the one extension the ROC metrics need: a constant map
// has no ordering, so it maps to 0.5 everywhere and every threshold sweep
// degenerates to chance.
Grid range_or_half(const Grid& g) {
    if (grid_is_constant(g)) return Grid(g.width, g.height, 0.5);
    return normalize_range(g);
}

std::vector<double> values_at_fixations(const Grid& P, const BinaryFixationMap& Q) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(Q.n_fixations));
    for (std::size_t i = 0; i < P.size(); ++i)
        if (Q.grid.v[i] != 0.0) vals.push_back(P.v[i]);
    return vals;
}

double trapezoid(const std::vector<double>& fp, const std::vector<double>& tp) {
    double area = 0.0;
    for (std::size_t k = 1; k < fp.size(); ++k)
        area += (fp[k] - fp[k - 1]) * (tp[k] + tp[k - 1]) * 0.5;
    return area;
}

// Fixed 0:0.1:1 threshold sweep shared by the sampled-negative AUCs.
// Positives are the fixation values, negatives the sampled values; both maps
// already range-normalized. Returns the trapezoidal area of the curve
// anchored at (0,0).
double sampled_auc(const std::vector<double>& fix_ge,  // count of fixations >= k/10, k=10..0
                   const std::vector<double>& neg_vals, double n_fix) {
    std::vector<double> fp, tp;
    fp.reserve(12);
    tp.reserve(12);
    fp.push_back(0.0);
    tp.push_back(0.0);
    for (int k = 10; k >= 0; --k) {
        const double t = k / 10.0;
        std::size_t neg_ge = 0;
        for (double v : neg_vals)
            if (v >= t) ++neg_ge;
        fp.push_back(static_cast<double>(neg_ge) / static_cast<double>(neg_vals.size()));
        tp.push_back(fix_ge[static_cast<std::size_t>(10 - k)] / n_fix);
    }
    return trapezoid(fp, tp);
}

std::vector<double> count_fix_ge(const std::vector<double>& fix_vals) {
    std::vector<double> counts;
    counts.reserve(11);
    for (int k = 10; k >= 0; --k) {
        const double t = k / 10.0;
        std::size_t n = 0;
        for (double v : fix_vals)
            if (v >= t) ++n;
        counts.push_back(static_cast<double>(n));
    }
    return counts;
}

}  // namespace

double RocCurve::auc() const { return trapezoid(fp, tp); }

void write_roc_csv(const RocCurve& curve, std::ostream& os) {
    os << "threshold,fp_rate,tp_rate\n";
    char buf[128];
    for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", curve.thresholds[i], curve.fp[i],
                      curve.tp[i]);
        os << buf;
    }
}

AucResult auc_judd(const Grid& P, const BinaryFixationMap& Q, std::uint64_t jitter_seed) {
    check_pair(P, Q);
    const std::size_t T = P.size();
    const std::size_t N = static_cast<std::size_t>(Q.n_fixations);
    if (N >= T) throw std::invalid_argument("all pixels fixated");

    // Jitter before normalizing so constant maps still get an ordering; the
    // span is far below any 8-bit value gap, so real orderings are kept.
    Grid jittered = P;
    Rng rng(jitter_seed);
    for (double& x : jittered.v) x += rng.uniform() * kJitterSpan;
    jittered = range_or_half(jittered);

    std::vector<double> all_desc = jittered.v;
    std::sort(all_desc.begin(), all_desc.end(), std::greater<>());
    std::vector<double> fix_desc = values_at_fixations(jittered, Q);
    std::sort(fix_desc.begin(), fix_desc.end(), std::greater<>());

    RocCurve curve;
    curve.thresholds.reserve(T + 1);
    curve.fp.reserve(T + 1);
    curve.tp.reserve(T + 1);
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());
    curve.fp.push_back(0.0);
    curve.tp.push_back(0.0);

    // One curve point per distinct saliency value, descending. After the
    // inner advance, i counts pixels >= v and j counts fixations >= v.
    std::size_t i = 0, j = 0;
    while (i < T) {
        const double v = all_desc[i];
        while (i < T && all_desc[i] == v) ++i;
        while (j < N && fix_desc[j] >= v) ++j;
        curve.thresholds.push_back(v);
        curve.tp.push_back(static_cast<double>(j) / static_cast<double>(N));
        curve.fp.push_back(static_cast<double>(i - j) / static_cast<double>(T - N));
    }

    return AucResult{curve.auc(), std::move(curve)};
}

double auc_borji(const Grid& P, const BinaryFixationMap& Q, const NegativeSampler& sampler) {
    check_pair(P, Q);
    if (sampler.mode != NegativeSampler::Mode::Uniform)
        throw std::invalid_argument("uniform sampler required");
    if (sampler.trials <= 0) throw std::invalid_argument("trials must be positive");

    const Grid norm = range_or_half(P);
    const std::vector<double> fix_vals = values_at_fixations(norm, Q);
    const std::vector<double> fix_ge = count_fix_ge(fix_vals);
    const std::size_t N = fix_vals.size();
    const int T = static_cast<int>(norm.size());

    double total = 0.0;
    std::vector<double> negatives(N);
    for (int trial = 0; trial < sampler.trials; ++trial) {
        Rng rng(mix_seed(sampler.seed, static_cast<std::uint64_t>(trial)));
        for (std::size_t k = 0; k < N; ++k)
            negatives[k] = norm.v[static_cast<std::size_t>(rng.uniform_int(T))];
        total += sampled_auc(fix_ge, negatives, static_cast<double>(N));
    }
    return total / sampler.trials;
}

double sauc(const Grid& P, const BinaryFixationMap& Q, const NegativeSampler& sampler) {
    check_pair(P, Q);
    if (sampler.mode != NegativeSampler::Mode::Shuffled || sampler.pool.empty())
        throw std::invalid_argument("shuffle pool required");
    if (sampler.trials <= 0) throw std::invalid_argument("trials must be positive");

    const Grid norm = range_or_half(P);
    const std::vector<double> fix_vals = values_at_fixations(norm, Q);
    const std::vector<double> fix_ge = count_fix_ge(fix_vals);
    const std::size_t N = fix_vals.size();

    const int per_trial = std::min<int>(sampler.images_per_trial,
                                        static_cast<int>(sampler.pool.size()));

    double total = 0.0;
    std::vector<std::size_t> order(sampler.pool.size());
    for (int trial = 0; trial < sampler.trials; ++trial) {
        Rng rng(mix_seed(sampler.seed, 0x5AAC0000ULL + static_cast<std::uint64_t>(trial)));

        // Draw per_trial distinct source images, pool their fixations mapped
        // into the target frame.
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        for (int k = 0; k < per_trial; ++k) {
            const int pick = k + rng.uniform_int(static_cast<int>(order.size()) - k);
            std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick)]);
        }

        std::vector<double> pooled;
        for (int k = 0; k < per_trial; ++k) {
            const ShuffleSource& src = sampler.pool[order[static_cast<std::size_t>(k)]];
            const bool rescale = src.width > 0 && src.height > 0 &&
                                 (src.width != norm.width || src.height != norm.height);
            for (const Point& p : src.points) {
                int x = p.x, y = p.y;
                if (rescale) {
                    x = static_cast<int>((p.x + 0.5) * norm.width / src.width);
                    y = static_cast<int>((p.y + 0.5) * norm.height / src.height);
                }
                x = std::clamp(x, 0, norm.width - 1);
                y = std::clamp(y, 0, norm.height - 1);
                pooled.push_back(norm.at(x, y));
            }
        }
        if (pooled.empty()) throw std::invalid_argument("shuffle pool has no fixations");

        // As many negatives as fixations, with replacement; negatives landing
        // on positives stay.
        std::vector<double> negatives(N);
        for (std::size_t k = 0; k < N; ++k)
            negatives[k] = pooled[static_cast<std::size_t>(
                rng.uniform_int(static_cast<int>(pooled.size())))];
        total += sampled_auc(fix_ge, negatives, static_cast<double>(N));
    }
    return total / sampler.trials;
}

double nss(const Grid& P, const BinaryFixationMap& Q) {
    check_pair(P, Q);
    // A flat map makes no prediction; scored at chance rather than erroring
    // so baseline sweeps can include it.
    if (grid_is_constant(P)) return 0.0;

    const Grid z = normalize_variance(P);
    double acc = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (Q.grid.v[i] != 0.0) acc += z.v[i];
    return acc / static_cast<double>(Q.n_fixations);
}

double information_gain(const Grid& P, const BinaryFixationMap& Q, const Grid& baseline,
                        double epsilon) {
    check_pair(P, Q);
    if (!P.same_dims(baseline)) throw std::invalid_argument("dimension mismatch");
    if (std::abs(grid_sum(P) - 1.0) > 1e-6 || std::abs(grid_sum(baseline) - 1.0) > 1e-6)
        throw std::invalid_argument("probabilistic input required");

    const double log2e = 1.0 / std::log(2.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        if (Q.grid.v[i] != 0.0)
            acc += (std::log(epsilon + P.v[i]) - std::log(epsilon + baseline.v[i])) * log2e;
    return acc / static_cast<double>(Q.n_fixations);
}

}  // namespace salmetrics

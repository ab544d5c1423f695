#include "salmetrics/visualization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"

namespace salmetrics {

namespace {

constexpr double kJitterSpan = 1e-7;

Grid jittered_prediction(const Grid& P, std::uint64_t jitter_seed) {
    Grid j = P;
    Rng rng(jitter_seed);
    for (double& v : j.v) v += rng.uniform() * kJitterSpan;
    return normalize_range(j);
}

}  // namespace

LevelSets vis_level_sets(const Grid& P, const BinaryFixationMap& Q, int k,
                         std::uint64_t jitter_seed) {
    if (!P.same_dims(Q.grid)) throw std::invalid_argument("dimension mismatch");
    if (k < 1) throw std::invalid_argument("need >= 1 level set");
    if (Q.n_fixations <= 0) throw std::invalid_argument("no ground truth fixations");

    const Grid jp = jittered_prediction(P, jitter_seed);

    LevelSets ls;
    std::vector<double> fix_values;
    for (int y = 0; y < Q.grid.height; ++y)
        for (int x = 0; x < Q.grid.width; ++x)
            if (Q.grid.at(x, y) > 0.0) {
                ls.fixations.push_back(Point{x, y});
                fix_values.push_back(jp.at(x, y));
            }

    std::vector<double> sorted_desc = fix_values;
    std::sort(sorted_desc.begin(), sorted_desc.end(), std::greater<double>());

    const auto N = static_cast<double>(fix_values.size());
    const auto T = static_cast<double>(jp.size());
    if (N >= T) throw std::invalid_argument("all pixels fixated");

    for (int j = 1; j <= k; ++j) {
        // Threshold at the fixation value whose rank realizes this quantile.
        const double target_tp = static_cast<double>(j) / (k + 1);
        auto count = static_cast<std::size_t>(std::lround(target_tp * N));
        count = std::clamp<std::size_t>(count, 1, sorted_desc.size());
        const double threshold = sorted_desc[count - 1];

        LevelSetMask m;
        m.threshold = threshold;
        m.mask = Grid(jp.width, jp.height, 0.0);
        std::size_t pix_ge = 0;
        for (std::size_t i = 0; i < jp.size(); ++i)
            if (jp.v[i] >= threshold) {
                m.mask.v[i] = 1.0;
                ++pix_ge;
            }
        std::size_t fix_ge = 0;
        m.hits.reserve(fix_values.size());
        for (double fv : fix_values) {
            const bool hit = fv >= threshold;
            m.hits.push_back(hit);
            if (hit) ++fix_ge;
        }
        m.tp_rate = static_cast<double>(fix_ge) / N;
        m.fp_rate = static_cast<double>(pix_ge - fix_ge) / (T - N);
        ls.masks.push_back(std::move(m));
    }
    return ls;
}

namespace {

void check_probabilistic(const Grid& g, const char* what) {
    if (std::abs(grid_sum(g) - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(what) + ": probabilistic input required");
}

const Grid& dist_target(const VisTarget& Q) {
    if (const Grid* g = std::get_if<Grid>(&Q)) return *g;
    throw std::invalid_argument("continuous target required");
}

const BinaryFixationMap& fix_target(const VisTarget& Q) {
    if (const BinaryFixationMap* b = std::get_if<BinaryFixationMap>(&Q)) return *b;
    throw std::invalid_argument("fixation target required");
}

}  // namespace

Grid vis_pointwise(MetricId metric, const Grid& P, const VisTarget& Q, const Grid* baseline,
                   double epsilon) {
    switch (metric) {
        case MetricId::Nss: {
            const BinaryFixationMap& fm = fix_target(Q);
            if (!P.same_dims(fm.grid)) throw std::invalid_argument("dimension mismatch");
            const Grid pn = normalize_variance(P);
            Grid out(P.width, P.height, 0.0);
            for (std::size_t i = 0; i < out.size(); ++i)
                if (fm.grid.v[i] > 0.0) out.v[i] = pn.v[i];
            return out;
        }
        case MetricId::Ig: {
            const BinaryFixationMap& fm = fix_target(Q);
            if (!P.same_dims(fm.grid)) throw std::invalid_argument("dimension mismatch");
            if (baseline == nullptr) throw std::invalid_argument("ig baseline required");
            if (!P.same_dims(*baseline)) throw std::invalid_argument("dimension mismatch");
            check_probabilistic(P, "prediction");
            check_probabilistic(*baseline, "baseline");
            const double inv_ln2 = 1.0 / std::log(2.0);
            Grid out(P.width, P.height, 0.0);
            for (std::size_t i = 0; i < out.size(); ++i)
                if (fm.grid.v[i] > 0.0)
                    out.v[i] = (std::log(epsilon + P.v[i]) - std::log(epsilon + baseline->v[i])) *
                               inv_ln2;
            return out;
        }
        case MetricId::Sim: {
            const Grid& q = dist_target(Q);
            if (!P.same_dims(q)) throw std::invalid_argument("dimension mismatch");
            const Grid pn = normalize_sum(P);
            const Grid qn = normalize_sum(q);
            Grid out(P.width, P.height, 0.0);
            for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = std::min(pn.v[i], qn.v[i]);
            return out;
        }
        case MetricId::Cc: {
            const Grid& q = dist_target(Q);
            if (!P.same_dims(q)) throw std::invalid_argument("dimension mismatch");
            const Grid pn = normalize_variance(P);
            const Grid qn = normalize_variance(q);
            double denom = 0.0;
            for (std::size_t i = 0; i < pn.size(); ++i)
                denom += pn.v[i] * pn.v[i] + qn.v[i] * qn.v[i];
            denom = std::sqrt(denom);
            Grid out(P.width, P.height, 0.0);
            for (std::size_t i = 0; i < out.size(); ++i) out.v[i] = pn.v[i] * qn.v[i] / denom;
            return out;
        }
        case MetricId::Kl: {
            const Grid& q = dist_target(Q);
            if (!P.same_dims(q)) throw std::invalid_argument("dimension mismatch");
            check_probabilistic(P, "prediction");
            check_probabilistic(q, "target");
            Grid out(P.width, P.height, 0.0);
            for (std::size_t i = 0; i < out.size(); ++i)
                if (q.v[i] > 0.0) out.v[i] = q.v[i] * std::log(epsilon + q.v[i] / (epsilon + P.v[i]));
            return out;
        }
        default:
            throw std::invalid_argument("no pointwise decomposition for " +
                                        std::string(metric_name(metric)));
    }
}

EmdFlowMaps vis_emd_flow(const EmdSolution& sol) {
    EmdFlowMaps maps;
    maps.outflow = Grid(sol.bins_w, sol.bins_h, 0.0);
    maps.inflow = Grid(sol.bins_w, sol.bins_h, 0.0);
    for (const EmdFlow& f : sol.flows) {
        const double cost = f.amount * f.distance;
        maps.outflow.v[static_cast<std::size_t>(f.from_bin)] += cost;
        maps.inflow.v[static_cast<std::size_t>(f.to_bin)] += cost;
    }
    return maps;
}

namespace {

struct RgbF {
    double r, g, b;
};

Rgb lerp_ramp(const RgbF* anchors, int n, double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * (n - 1);
    const int lo = std::min(static_cast<int>(pos), n - 2);
    const double f = pos - lo;
    const RgbF& a = anchors[lo];
    const RgbF& b = anchors[lo + 1];
    auto ch = [&](double x, double y) {
        return static_cast<std::uint8_t>(std::lround(x + (y - x) * f));
    };
    return Rgb{ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b)};
}

}  // namespace

RgbImage render_heat(const Grid& g) {
    static const RgbF ramp[] = {
        {0, 0, 4}, {87, 16, 110}, {188, 55, 84}, {249, 142, 9}, {252, 255, 164}};
    const double lo = grid_min(g), hi = grid_max(g);
    RgbImage img(g.width, g.height);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = hi > lo ? (g.v[i] - lo) / (hi - lo) : 0.5;
        img.px[i] = lerp_ramp(ramp, 5, t);
    }
    return img;
}

RgbImage render_diverging(const Grid& g) {
    static const RgbF neg[] = {{247, 247, 247}, {214, 96, 77}, {178, 24, 43}};
    static const RgbF pos[] = {{247, 247, 247}, {67, 147, 195}, {33, 102, 172}};
    double m = 0.0;
    for (double v : g.v) m = std::max(m, std::abs(v));
    RgbImage img(g.width, g.height);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = m > 0.0 ? g.v[i] / m : 0.0;
        img.px[i] = t < 0.0 ? lerp_ramp(neg, 3, -t) : lerp_ramp(pos, 3, t);
    }
    return img;
}

RgbImage render_emd_flow(const EmdFlowMaps& maps, int out_w, int out_h) {
    if (!maps.outflow.same_dims(maps.inflow)) throw std::invalid_argument("dimension mismatch");
    if (out_w <= 0 || out_h <= 0) throw std::invalid_argument("empty render target");
    const double m = std::max(grid_max(maps.outflow), grid_max(maps.inflow));
    RgbImage img(out_w, out_h);
    for (int y = 0; y < out_h; ++y) {
        const int sy = y * maps.outflow.height / out_h;
        for (int x = 0; x < out_w; ++x) {
            const int sx = x * maps.outflow.width / out_w;
            const double out_t = m > 0.0 ? maps.outflow.at(sx, sy) / m : 0.0;
            const double in_t = m > 0.0 ? maps.inflow.at(sx, sy) / m : 0.0;
            img.px[static_cast<std::size_t>(y) * out_w + x] =
                Rgb{static_cast<std::uint8_t>(std::lround(in_t * 255.0)),
                    static_cast<std::uint8_t>(std::lround(out_t * 255.0)), 0};
        }
    }
    return img;
}

RgbImage render_level_sets(const LevelSets& ls) {
    if (ls.masks.empty()) throw std::invalid_argument("no level sets");
    const int w = ls.masks.front().mask.width;
    const int h = ls.masks.front().mask.height;
    const int n = static_cast<int>(ls.masks.size());
    const int gutter = 2;
    RgbImage img(n * w + gutter * (n - 1), h);
    std::fill(img.px.begin(), img.px.end(), Rgb{255, 255, 255});

    const Rgb inside{200, 200, 200};
    const Rgb outside{30, 30, 30};
    const Rgb hit{0, 200, 0};
    const Rgb miss{220, 40, 40};

    for (int mi = 0; mi < n; ++mi) {
        const LevelSetMask& m = ls.masks[static_cast<std::size_t>(mi)];
        const int x0 = mi * (w + gutter);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                img.px[static_cast<std::size_t>(y) * img.width + x0 + x] =
                    m.mask.at(x, y) > 0.0 ? inside : outside;
        for (std::size_t fi = 0; fi < ls.fixations.size(); ++fi) {
            const Point& p = ls.fixations[fi];
            const Rgb dot = m.hits[fi] ? hit : miss;
            // Plus-shaped dot, clipped to this mask's tile.
            static const int dx[] = {0, 1, -1, 0, 0};
            static const int dy[] = {0, 0, 0, 1, -1};
            for (int d = 0; d < 5; ++d) {
                const int px = p.x + dx[d];
                const int py = p.y + dy[d];
                if (px < 0 || px >= w || py < 0 || py >= h) continue;
                img.px[static_cast<std::size_t>(py) * img.width + x0 + px] = dot;
            }
        }
    }
    return img;
}

Grid equalize_for_display(const Grid& g) {
    Grid ramp(g.width, g.height, 0.5);
    if (g.size() > 1)
        for (std::size_t i = 0; i < g.size(); ++i)
            ramp.v[i] = static_cast<double>(i) / static_cast<double>(g.size() - 1);
    return histogram_match(g, ramp);
}

}  // namespace salmetrics

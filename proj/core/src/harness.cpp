#include "salmetrics/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "salmetrics/io.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"
#include "salmetrics/visualization.hpp"

namespace salmetrics {

namespace {

// Runs fn(0..n-1) on up to `jobs` workers. Work units own their error
// handling; anything that still escapes is rethrown on the caller thread
// after the pool drains.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void sort_records(std::vector<ScoreRecord>& records) {
    std::sort(records.begin(), records.end(), [](const ScoreRecord& a, const ScoreRecord& b) {
        return std::tie(a.model, a.image, a.metric) < std::tie(b.model, b.image, b.metric);
    });
}

std::vector<ShuffleSource> all_sources(const Dataset& ds) {
    std::vector<ShuffleSource> sources;
    for (const DatasetImage& img : ds.images)
        sources.push_back(ShuffleSource{img.fixations.image_id, img.width, img.height,
                                        img.fixations.all_points()});
    return sources;
}

std::vector<ShuffleSource> sources_excluding(const std::vector<ShuffleSource>& all,
                                             const std::string& image_id) {
    std::vector<ShuffleSource> out;
    for (const ShuffleSource& s : all)
        if (s.image_id != image_id && !s.points.empty()) out.push_back(s);
    return out;
}

// Per-image scoring context. Pointers in `params` alias this struct, so
// instances must not move after wire_params().
struct ImageContext {
    const DatasetImage* img = nullptr;
    GroundTruth gt;
    Grid center;
    std::vector<ShuffleSource> pool;
    EvalParams params;

    void wire_params(const BenchmarkConfig& config, bool needs_pool) {
        params.geom.pixels_per_degree = config.pixels_per_degree;
        params.epsilon = config.epsilon;
        params.emd_downscale = config.emd_downscale;
        params.borji_trials = config.borji_trials;
        params.sauc_trials = config.sauc_trials;
        params.sauc_images_per_trial = config.sauc_images_per_trial;
        // Seeded from the image alone so every model sees the same negative
        // samples and score differences come from the maps.
        params.seed = mix_seed(config.seed, hash_string(img->fixations.image_id));
        params.ig_baseline = &center;
        params.shuffle_pool = needs_pool ? &pool : nullptr;
    }
};

std::vector<ImageContext> build_contexts(const BenchmarkConfig& config, const Dataset& ds,
                                         bool needs_pool) {
    const std::vector<ShuffleSource> sources = needs_pool ? all_sources(ds) :
                                                            std::vector<ShuffleSource>{};
    std::vector<ImageContext> ctxs(ds.images.size());
    ViewingGeometry geom{config.pixels_per_degree};
    parallel_for(ds.images.size(), config.resolved_jobs(), [&](std::size_t i) {
        ImageContext& c = ctxs[i];
        c.img = &ds.images[i];
        c.gt = make_ground_truth(c.img->fixations, c.img->width, c.img->height, geom);
        c.center = center_prior(c.img->width, c.img->height, config.center_sigma_frac);
        if (needs_pool) c.pool = sources_excluding(sources, c.img->fixations.image_id);
    });
    for (ImageContext& c : ctxs) c.wire_params(config, needs_pool);
    return ctxs;
}

bool wants_metric(const BenchmarkConfig& config, MetricId m) {
    return std::find(config.metrics.begin(), config.metrics.end(), m) != config.metrics.end();
}

std::optional<std::filesystem::path> find_map_file(const std::filesystem::path& dir,
                                                   const std::string& image_id) {
    for (const char* ext : {".png", ".csv", ".bin"}) {
        std::filesystem::path p = dir / (image_id + ext);
        if (std::filesystem::exists(p)) return p;
    }
    return std::nullopt;
}

struct UnitResult {
    std::vector<ScoreRecord> records;
    std::vector<std::string> errors;
};

// Scores one already-loaded prediction under every configured metric,
// recording per-metric failures instead of aborting the unit.
void score_all_metrics(const BenchmarkConfig& config, const std::string& model,
                       const ImageContext& ctx, const Grid& map, UnitResult& out) {
    const std::string& image_id = ctx.img->fixations.image_id;
    for (MetricId m : config.metrics) {
        try {
            out.records.push_back(
                ScoreRecord{model, image_id, m, score_map(m, map, ctx.gt, ctx.params)});
        } catch (const std::exception& e) {
            out.errors.push_back("model '" + model + "' image '" + image_id + "' metric " +
                                 std::string(metric_name(m)) + ": " + e.what());
        }
    }
}

EvalOutcome collect(std::vector<UnitResult>& units) {
    EvalOutcome out;
    for (UnitResult& u : units) {
        out.records.insert(out.records.end(), u.records.begin(), u.records.end());
        out.errors.insert(out.errors.end(), u.errors.begin(), u.errors.end());
    }
    sort_records(out.records);
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

EvalOutcome evaluate(const BenchmarkConfig& config) {
    const Dataset ds = load_dataset(config.dataset_dir);
    const std::vector<ImageContext> ctxs =
        build_contexts(config, ds, wants_metric(config, MetricId::Sauc));

    const std::size_t n_units = config.models.size() * ctxs.size();
    std::vector<UnitResult> units(n_units);
    parallel_for(n_units, config.resolved_jobs(), [&](std::size_t u) {
        const ModelSpec& model = config.models[u / ctxs.size()];
        const ImageContext& ctx = ctxs[u % ctxs.size()];
        const std::string& image_id = ctx.img->fixations.image_id;
        const auto path = find_map_file(model.dir, image_id);
        if (!path) {
            units[u].errors.push_back("model '" + model.name + "' image '" + image_id +
                                      "': no map file (.png/.csv/.bin) in " + model.dir.string());
            return;
        }
        Grid map;
        try {
            map = load_grid(*path);
        } catch (const std::exception& e) {
            units[u].errors.push_back("model '" + model.name + "' image '" + image_id +
                                      "': " + e.what());
            return;
        }
        score_all_metrics(config, model.name, ctx, map, units[u]);
    });
    return collect(units);
}

EvalOutcome run_baselines(const BenchmarkConfig& config) {
    const Dataset ds = load_dataset(config.dataset_dir);
    const std::vector<ImageContext> ctxs =
        build_contexts(config, ds, wants_metric(config, MetricId::Sauc));
    const ViewingGeometry geom{config.pixels_per_degree};

    std::vector<UnitResult> units(ctxs.size());
    parallel_for(ctxs.size(), config.resolved_jobs(), [&](std::size_t i) {
        const ImageContext& ctx = ctxs[i];
        const DatasetImage& img = *ctx.img;
        const std::string& image_id = img.fixations.image_id;
        UnitResult& out = units[i];

        // One observer predicting the others: leave-one-out ground truth,
        // averaged over the held-out observer.
        const std::size_t n_obs = img.fixations.observers.size();
        if (n_obs < 2) {
            out.errors.push_back("image '" + image_id +
                                 "': single_observer needs >= 2 observers");
        } else {
            std::map<MetricId, std::vector<double>> per_metric;
            for (std::size_t o = 0; o < n_obs; ++o) {
                const Grid pred =
                    single_observer_map(img.fixations, o, img.width, img.height, geom);
                FixationSet rest;
                rest.image_id = image_id;
                for (std::size_t k = 0; k < n_obs; ++k)
                    if (k != o) rest.observers.push_back(img.fixations.observers[k]);
                const GroundTruth gt_rest =
                    make_ground_truth(rest, img.width, img.height, geom);
                for (MetricId m : config.metrics) {
                    try {
                        per_metric[m].push_back(score_map(m, pred, gt_rest, ctx.params));
                    } catch (const std::exception& e) {
                        out.errors.push_back("model 'single_observer' image '" + image_id +
                                             "' metric " + std::string(metric_name(m)) +
                                             ": " + e.what());
                    }
                }
            }
            for (MetricId m : config.metrics)
                if (const auto it = per_metric.find(m); it != per_metric.end() &&
                                                       !it->second.empty())
                    out.records.push_back(ScoreRecord{"single_observer", image_id, m,
                                                      mean_of(it->second)});
        }

        score_all_metrics(config, "center_prior", ctx, ctx.center, out);

        try {
            const std::uint64_t perm_seed = mix_seed(
                mix_seed(config.seed, hash_string("permutation_control")), hash_string(image_id));
            const Grid perm = permutation_control(image_id, img.width, img.height, ds.images,
                                                  geom, perm_seed);
            score_all_metrics(config, "permutation_control", ctx, perm, out);
        } catch (const std::exception& e) {
            out.errors.push_back("model 'permutation_control' image '" + image_id +
                                 "': " + e.what());
        }

        score_all_metrics(config, "chance", ctx, chance_uniform(img.width, img.height), out);
    });
    return collect(units);
}

LimitsResult run_limits(const BenchmarkConfig& config) {
    const Dataset ds = load_dataset(config.dataset_dir);
    const std::vector<ImageContext> ctxs =
        build_contexts(config, ds, wants_metric(config, MetricId::Sauc));

    LimitsResult result;

    // Largest group size every image supports (each split draws 2n
    // observers).
    int n_max = std::numeric_limits<int>::max();
    for (const DatasetImage& img : ds.images)
        n_max = std::min(n_max, static_cast<int>(img.fixations.observers.size()) / 2);
    if (n_max < 3) {
        result.warnings.push_back(
            "too few observers: the fit needs >= 3 distinct group sizes, max feasible n is " +
            std::to_string(n_max));
        return result;
    }

    // Group sizes: every n up to 8, then sparse geometric growth.
    std::vector<int> ns;
    for (int n = 1; n <= std::min(n_max, 8); ++n) ns.push_back(n);
    for (int n = 11; n <= n_max; n = std::max(n + 1, static_cast<int>(std::lround(n * 1.4))))
        ns.push_back(n);

    struct Cell {
        MetricId metric;
        int n;
        double mean = 0.0;
    };
    std::vector<Cell> cells;
    for (MetricId m : config.metrics)
        for (int n : ns) cells.push_back(Cell{m, n, 0.0});

    std::mutex warn_mutex;
    parallel_for(cells.size(), config.resolved_jobs(), [&](std::size_t i) {
        Cell& cell = cells[i];
        std::vector<double> scores;
        for (const ImageContext& ctx : ctxs) {
            try {
                scores.push_back(split_observer_score(ctx.img->fixations, ctx.img->width,
                                                      ctx.img->height, cell.n, cell.metric,
                                                      ctx.params, config.splits_per_n));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(warn_mutex);
                result.warnings.push_back(std::string(metric_name(cell.metric)) + " n=" +
                                          std::to_string(cell.n) + " image '" +
                                          ctx.img->fixations.image_id + "': " + e.what());
            }
        }
        if (!scores.empty()) cell.mean = mean_of(scores);
    });

    for (MetricId m : config.metrics) {
        std::vector<std::pair<int, double>> points;
        for (const Cell& cell : cells)
            if (cell.metric == m) {
                points.emplace_back(cell.n, cell.mean);
                result.curve.emplace_back(metric_name(m), cell.n, cell.mean);
            }
        try {
            result.fits[std::string(metric_name(m))] =
                empirical_limit(points, metric_range(m));
        } catch (const std::exception& e) {
            result.warnings.push_back(std::string(metric_name(m)) + ": " + e.what());
        }
    }
    return result;
}

std::vector<AblateRow> run_ablate(const BenchmarkConfig& config) {
    const Dataset ds = load_dataset(config.dataset_dir);
    const std::vector<ImageContext> ctxs =
        build_contexts(config, ds, wants_metric(config, MetricId::Sauc));

    std::vector<double> fractions{0.0};
    for (double f : config.ablate_fractions)
        if (f != 0.0) fractions.push_back(f);

    // scores[fraction][metric][image]
    std::vector<std::vector<std::vector<double>>> scores(
        fractions.size(),
        std::vector<std::vector<double>>(config.metrics.size(),
                                         std::vector<double>(ctxs.size(), 0.0)));

    parallel_for(ctxs.size(), config.resolved_jobs(), [&](std::size_t i) {
        const ImageContext& ctx = ctxs[i];
        for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
            const Grid ablated = ablate_false_negatives(
                ctx.gt.dist, fractions[fi], mix_seed(ctx.params.seed, 0xAB1A7E00 + fi));
            for (std::size_t mi = 0; mi < config.metrics.size(); ++mi)
                scores[fi][mi][i] =
                    score_map(config.metrics[mi], ablated, ctx.gt, ctx.params);
        }
    });

    std::vector<AblateRow> rows;
    for (std::size_t fi = 0; fi < fractions.size(); ++fi)
        for (std::size_t mi = 0; mi < config.metrics.size(); ++mi) {
            const std::vector<double>& v = scores[fi][mi];
            const double mean = mean_of(v);
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            rows.push_back(AblateRow{fractions[fi], config.metrics[mi], mean,
                                     std::sqrt(var / static_cast<double>(v.size()))});
        }
    return rows;
}

std::vector<SweepResult> run_sweep(const BenchmarkConfig& config, const std::string& only) {
    if (!only.empty() && only != "variance" && only != "location" && only != "weight")
        throw std::invalid_argument("unknown sweep parameter '" + only +
                                 "' (variance|location|weight)");

    // sAUC has no second image to shuffle fixations from on the synthetic
    // stimulus.
    std::vector<MetricId> metrics;
    for (MetricId m : config.metrics)
        if (m != MetricId::Sauc) metrics.push_back(m);
    if (metrics.empty()) throw std::invalid_argument("no sweepable metrics configured");

    const int w = 192, h = 108;
    const double ppd = config.pixels_per_degree;

    EvalParams params;
    params.geom.pixels_per_degree = ppd;
    params.epsilon = config.epsilon;
    params.emd_downscale = config.emd_downscale;
    params.borji_trials = config.borji_trials;
    params.seed = mix_seed(config.seed, hash_string("sweep"));
    const Grid baseline = center_prior(w, h, config.center_sigma_frac);
    params.ig_baseline = &baseline;

    std::vector<std::pair<std::string, SweepSpec>> specs;
    if (only.empty() || only == "variance")
        specs.emplace_back("variance", SweepSpec{SweepSpec::Param::Variance, 0.25 * ppd,
                                                 2.0 * ppd, 8, ppd});
    if (only.empty() || only == "location")
        specs.emplace_back("location", SweepSpec{SweepSpec::Param::Location, 0.0, 32.0, 9, 0.0});
    if (only.empty() || only == "weight")
        specs.emplace_back("weight", SweepSpec{SweepSpec::Param::Weight, 0.1, 0.9, 9, 0.5});

    std::vector<SweepResult> results;
    for (const auto& [name, spec] : specs)
        results.push_back(SweepResult{name, synthetic_sweep(spec, metrics, w, h, params)});
    return results;
}

RankMatrix run_correlate(const BenchmarkConfig& config) {
    const EvalOutcome outcome = evaluate(config);
    return spearman_rank_matrix(outcome.records);
}

EvalOutcome run_visualize(const BenchmarkConfig& config) {
    const Dataset ds = load_dataset(config.dataset_dir);
    const std::vector<ImageContext> ctxs = build_contexts(config, ds, false);
    const std::filesystem::path vis_dir = config.output_dir / "vis";

    const std::size_t n_units = config.models.size() * ctxs.size();
    std::vector<UnitResult> units(n_units);
    for (const ModelSpec& model : config.models)
        std::filesystem::create_directories(vis_dir / model.name);

    parallel_for(n_units, config.resolved_jobs(), [&](std::size_t u) {
        const ModelSpec& model = config.models[u / ctxs.size()];
        const ImageContext& ctx = ctxs[u % ctxs.size()];
        const std::string& image_id = ctx.img->fixations.image_id;
        UnitResult& out = units[u];
        const std::filesystem::path dir = vis_dir / model.name;

        const auto path = find_map_file(model.dir, image_id);
        if (!path) {
            out.errors.push_back("model '" + model.name + "' image '" + image_id +
                                 "': no map file (.png/.csv/.bin) in " + model.dir.string());
            return;
        }
        Grid P;
        try {
            P = resize(load_grid(*path), ctx.img->width, ctx.img->height);
        } catch (const std::exception& e) {
            out.errors.push_back("model '" + model.name + "' image '" + image_id +
                                 "': " + e.what());
            return;
        }

        auto record = [&](MetricId m, double value) {
            out.records.push_back(ScoreRecord{model.name, image_id, m, value});
        };
        auto fail = [&](MetricId m, const std::exception& e) {
            out.errors.push_back("model '" + model.name + "' image '" + image_id + "' metric " +
                                 std::string(metric_name(m)) + ": " + e.what());
        };
        const auto N = static_cast<double>(ctx.gt.binary.n_fixations);
        const auto T = static_cast<double>(P.size());
        const Grid pn = normalize_sum(P);

        try {
            const std::uint64_t jitter =
                mix_seed(ctx.params.seed, hash_string(metric_name(MetricId::AucJudd)));
            const AucResult auc = auc_judd(P, ctx.gt.binary, jitter);
            const LevelSets ls =
                vis_level_sets(P, ctx.gt.binary, config.level_sets_k, jitter);
            save_rgb_png(render_level_sets(ls), dir / (image_id + ".auc_judd.png"));
            std::ofstream roc(dir / (image_id + ".auc_judd_roc.csv"));
            write_roc_csv(auc.curve, roc);
            record(MetricId::AucJudd, auc.score);
        } catch (const std::exception& e) {
            fail(MetricId::AucJudd, e);
        }
        try {
            const Grid v = vis_pointwise(MetricId::Nss, P, VisTarget{ctx.gt.binary});
            save_rgb_png(render_diverging(v), dir / (image_id + ".nss.png"));
            record(MetricId::Nss, grid_sum(v) / N);
        } catch (const std::exception& e) {
            fail(MetricId::Nss, e);
        }
        try {
            const Grid v = vis_pointwise(MetricId::Ig, pn, VisTarget{ctx.gt.binary},
                                         &ctx.center, config.epsilon);
            save_rgb_png(render_diverging(v), dir / (image_id + ".ig.png"));
            record(MetricId::Ig, grid_sum(v) / N);
        } catch (const std::exception& e) {
            fail(MetricId::Ig, e);
        }
        try {
            const Grid v = vis_pointwise(MetricId::Sim, P, VisTarget{ctx.gt.dist});
            save_rgb_png(render_heat(v), dir / (image_id + ".sim.png"));
            record(MetricId::Sim, grid_sum(v));
        } catch (const std::exception& e) {
            fail(MetricId::Sim, e);
        }
        try {
            const Grid v = vis_pointwise(MetricId::Cc, P, VisTarget{ctx.gt.dist});
            save_rgb_png(render_diverging(v), dir / (image_id + ".cc.png"));
            record(MetricId::Cc, std::sqrt(2.0 / T) * grid_sum(v));
        } catch (const std::exception& e) {
            fail(MetricId::Cc, e);
        }
        try {
            const Grid v =
                vis_pointwise(MetricId::Kl, pn, VisTarget{ctx.gt.dist}, nullptr, config.epsilon);
            save_rgb_png(render_heat(v), dir / (image_id + ".kl.png"));
            record(MetricId::Kl, grid_sum(v));
        } catch (const std::exception& e) {
            fail(MetricId::Kl, e);
        }
        try {
            const EmdSolution sol = emd(P, ctx.gt.dist, config.emd_downscale);
            save_rgb_png(render_emd_flow(vis_emd_flow(sol), ctx.img->width, ctx.img->height),
                         dir / (image_id + ".emd.png"));
            record(MetricId::Emd, sol.cost);
        } catch (const std::exception& e) {
            fail(MetricId::Emd, e);
        }
    });

    EvalOutcome outcome = collect(units);
    std::filesystem::create_directories(vis_dir);
    write_scores_csv(outcome.records, vis_dir / "vis_scores.csv");
    return outcome;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

}  // namespace

void write_scores_csv(const std::vector<ScoreRecord>& records,
                      const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "model,image_id,metric,value\n";
    for (const ScoreRecord& r : records)
        os << r.model << ',' << r.image << ',' << metric_name(r.metric) << ','
           << fmt_double(r.value) << '\n';
}

void write_summary_json(const BenchmarkConfig& config, const EvalOutcome& outcome,
                        const LimitsResult* limits, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["dataset_dir"] = config.dataset_dir.string();
    j["seed"] = config.seed;
    j["metrics"] = nlohmann::ordered_json::array();
    for (MetricId m : config.metrics) j["metrics"].push_back(metric_name(m));

    // Mean score per (model, metric) over the images both cover.
    std::map<std::string, std::map<MetricId, std::vector<double>>> by_model;
    for (const ScoreRecord& r : outcome.records) by_model[r.model][r.metric].push_back(r.value);
    j["models"] = nlohmann::ordered_json::array();
    for (const auto& [model, _] : by_model) j["models"].push_back(model);
    j["means"] = nlohmann::ordered_json::object();
    for (const auto& [model, metrics] : by_model) {
        nlohmann::ordered_json row;
        for (MetricId m : config.metrics)
            if (const auto it = metrics.find(m); it != metrics.end())
                row[std::string(metric_name(m))] = mean_of(it->second);
        j["means"][model] = std::move(row);
    }
    if (limits) {
        nlohmann::ordered_json fits;
        for (const auto& [metric, fit] : limits->fits) {
            fits[metric] = {{"a", fit.a},           {"b", fit.b},
                            {"c", fit.c},           {"ci_low", fit.ci_low},
                            {"ci_high", fit.ci_high}, {"n_points", fit.n_points}};
        }
        j["limits"] = std::move(fits);
    }
    j["errors"] = outcome.errors;

    std::ofstream os = open_out(path);
    os << j.dump(2) << '\n';
}

void write_ablate_csv(const std::vector<AblateRow>& rows, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "fraction,metric,mean,std_dev\n";
    for (const AblateRow& r : rows)
        os << fmt_double(r.fraction) << ',' << metric_name(r.metric) << ',' << fmt_double(r.mean)
           << ',' << fmt_double(r.std_dev) << '\n';
}

void write_sweep_csv(const std::vector<SweepResult>& sweeps, const std::filesystem::path& path) {
    std::ofstream os = open_out(path);
    os << "parameter,param_value,metric,score\n";
    for (const SweepResult& s : sweeps)
        for (const SweepRow& r : s.rows)
            os << s.parameter << ',' << fmt_double(r.param_value) << ',' << metric_name(r.metric)
               << ',' << fmt_double(r.score) << '\n';
}

void write_limits_json(const LimitsResult& limits, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["fits"] = nlohmann::ordered_json::object();
    for (const auto& [metric, fit] : limits.fits)
        j["fits"][metric] = {{"a", fit.a},           {"b", fit.b},
                             {"c", fit.c},           {"ci_low", fit.ci_low},
                             {"ci_high", fit.ci_high}, {"n_points", fit.n_points}};
    j["curve"] = nlohmann::ordered_json::array();
    for (const auto& [metric, n, score] : limits.curve)
        j["curve"].push_back({{"metric", metric}, {"n", n}, {"score", score}});
    j["warnings"] = limits.warnings;

    std::ofstream os = open_out(path);
    os << j.dump(2) << '\n';
}

}  // namespace salmetrics

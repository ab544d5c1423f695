#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "salmetrics/analysis.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"
#include "support/synthetic.hpp"

using namespace salmetrics;
using namespace salmetrics::testutil;

TEST_CASE("ablation zeroes the requested share of salient pixels") {
    const Grid g = random_smooth_map(32, 24, 3.0, 9);
    std::size_t above = 0;
    const double mean = grid_mean(g);
    for (double v : g.v)
        if (v > mean) ++above;
    REQUIRE(above > 4);

    const Grid untouched = ablate_false_negatives(g, 0.0, 1);
    CHECK(untouched.v == g.v);

    const Grid half = ablate_false_negatives(g, 0.5, 1);
    std::size_t zeroed = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (half.v[i] == 0.0 && g.v[i] != 0.0) {
            ++zeroed;
            CHECK(g.v[i] > mean);
        } else {
            CHECK(half.v[i] == g.v[i]);
        }
    }
    CHECK(zeroed == above / 2);

    // Same seed, same victims; a different seed picks a different set.
    CHECK(ablate_false_negatives(g, 0.5, 1).v == half.v);
    CHECK(ablate_false_negatives(g, 0.5, 2).v != half.v);

    CHECK_THROWS_WITH_AS(ablate_false_negatives(g, 1.0, 1), "fraction must be in [0, 1)",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(ablate_false_negatives(g, -0.1, 1), "fraction must be in [0, 1)",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(ablate_false_negatives(Grid(4, 4, 0.3), 0.5, 1),
                         "no above-mean pixels to ablate", std::invalid_argument);
}

TEST_CASE("chance-normalized score spans limit to chance") {
    CHECK(chance_normalized_score(0.92, 0.92, 0.50, false) == doctest::Approx(0.0));
    CHECK(chance_normalized_score(0.50, 0.92, 0.50, false) == doctest::Approx(100.0));
    CHECK(chance_normalized_score(0.67, 0.92, 0.50, false) ==
          doctest::Approx(100.0 * 0.25 / 0.42).epsilon(1e-12));

    // Lower-better metrics flip the span.
    CHECK(chance_normalized_score(0.3, 0.1, 0.9, true) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(chance_normalized_score(0.1, 0.1, 0.9, true) == doctest::Approx(0.0));
    CHECK(chance_normalized_score(0.9, 0.1, 0.9, true) == doctest::Approx(100.0));

    CHECK_THROWS_WITH_AS(chance_normalized_score(0.5, 0.7, 0.7, false),
                         "degenerate normalization span", std::invalid_argument);
}

TEST_CASE("sweep grid must contain the ground truth value") {
    EvalParams params;
    params.geom.pixels_per_degree = 6.0;
    params.seed = 2;

    SweepSpec spec;
    spec.param = SweepSpec::Param::Weight;
    spec.low = 0.1;
    spec.high = 0.9;
    spec.steps = 9;
    spec.ground_truth_value = 0.5;
    CHECK_NOTHROW(synthetic_sweep(spec, {MetricId::Sim}, 96, 54, params));

    spec.ground_truth_value = 0.47;
    CHECK_THROWS_WITH_AS(synthetic_sweep(spec, {MetricId::Sim}, 96, 54, params),
                         "ground_truth_value not on the sweep grid", std::invalid_argument);

    spec.steps = 1;
    CHECK_THROWS_AS(synthetic_sweep(spec, {MetricId::Sim}, 96, 54, params),
                    std::invalid_argument);
}

TEST_CASE("variance sweep scores peak at the true sigma") {
    EvalParams params;
    params.geom.pixels_per_degree = 6.0;
    params.seed = 2;

    SweepSpec spec;
    spec.param = SweepSpec::Param::Variance;
    spec.low = 0.25 * params.geom.pixels_per_degree;
    spec.high = 2.0 * params.geom.pixels_per_degree;
    spec.steps = 8;
    spec.ground_truth_value = params.geom.pixels_per_degree;

    const auto rows = synthetic_sweep(spec, {MetricId::Sim, MetricId::Cc}, 96, 54, params);
    REQUIRE(rows.size() == 16);

    double best_sim = -1.0, best_sim_value = -1.0;
    for (const SweepRow& r : rows) {
        if (r.metric != MetricId::Sim) continue;
        if (r.score > best_sim) {
            best_sim = r.score;
            best_sim_value = r.param_value;
        }
    }
    // The prediction equals the ground truth at sigma = one degree, where SIM
    // is exactly 1 and nowhere else.
    CHECK(best_sim_value == doctest::Approx(params.geom.pixels_per_degree));
    CHECK(best_sim == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("location sweep degrades with offset") {
    EvalParams params;
    params.geom.pixels_per_degree = 6.0;
    params.seed = 2;
    params.emd_downscale = 1.0 / 8.0;

    SweepSpec spec;
    spec.param = SweepSpec::Param::Location;
    spec.low = 0.0;
    spec.high = 12.0;
    spec.steps = 5;
    spec.ground_truth_value = 0.0;

    const auto rows = synthetic_sweep(spec, {MetricId::Emd}, 96, 54, params);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].score == doctest::Approx(0.0).epsilon(1e-9));
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].score >= rows[i - 1].score);
}

TEST_CASE("rank matrix on a constructed score table") {
    // Five models, two metrics agreeing perfectly plus one inverted copy.
    std::vector<ScoreRecord> records;
    const char* models[] = {"m1", "m2", "m3", "m4", "m5"};
    for (int i = 0; i < 5; ++i) {
        const double q = static_cast<double>(i);
        records.push_back({models[i], "imgA", MetricId::Nss, q});
        records.push_back({models[i], "imgB", MetricId::Nss, q + 0.5});
        records.push_back({models[i], "imgA", MetricId::Cc, 0.1 * q});
        records.push_back({models[i], "imgB", MetricId::Cc, 0.1 * q + 0.01});
        // Lower-better metric with the same model ordering: best model has
        // the smallest divergence.
        records.push_back({models[i], "imgA", MetricId::Kl, 1.0 - 0.1 * q});
        // Higher-better metric ranking the models in reverse.
        records.push_back({models[i], "imgA", MetricId::Sim, 1.0 / (1.0 + q)});
    }

    const RankMatrix m = spearman_rank_matrix(records);
    REQUIRE(m.metrics.size() == 4);
    REQUIRE(m.rho.size() == 4);

    auto idx = [&](MetricId id) {
        for (std::size_t i = 0; i < m.metrics.size(); ++i)
            if (m.metrics[i] == id) return i;
        REQUIRE(false);
        return std::size_t{0};
    };

    const std::size_t nss_i = idx(MetricId::Nss), cc_i = idx(MetricId::Cc),
                      kl_i = idx(MetricId::Kl), sim_i = idx(MetricId::Sim);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(m.rho[i][i] == doctest::Approx(1.0));
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(m.rho[i][j] == doctest::Approx(m.rho[j][i]).epsilon(1e-12));
    }
    CHECK(m.rho[nss_i][cc_i] == doctest::Approx(1.0).epsilon(1e-12));
    // Polarity-aware ranking: small KL and large NSS name the same best
    // model.
    CHECK(m.rho[nss_i][kl_i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.rho[nss_i][sim_i] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("rank matrix rejects thin or ragged tables") {
    std::vector<ScoreRecord> two = {{"m1", "i", MetricId::Nss, 1.0},
                                    {"m2", "i", MetricId::Nss, 2.0}};
    CHECK_THROWS_WITH_AS(spearman_rank_matrix(two), "rank correlation needs >= 3 models",
                         std::invalid_argument);

    std::vector<ScoreRecord> ragged = {
        {"m1", "i", MetricId::Nss, 1.0}, {"m1", "i", MetricId::Cc, 1.0},
        {"m2", "i", MetricId::Nss, 2.0}, {"m2", "i", MetricId::Cc, 2.0},
        {"m3", "i", MetricId::Nss, 3.0},
    };
    CHECK_THROWS_AS(spearman_rank_matrix(ragged), std::invalid_argument);
}

TEST_CASE("rank matrix csv layout") {
    std::vector<ScoreRecord> records;
    for (int i = 0; i < 3; ++i) {
        records.push_back({"m" + std::to_string(i), "img", MetricId::Nss, 1.0 * i});
        records.push_back({"m" + std::to_string(i), "img", MetricId::Cc, 0.5 * i});
    }
    const RankMatrix m = spearman_rank_matrix(records);
    std::ostringstream os;
    write_matrix_csv(m, os);
    const std::string text = os.str();
    CHECK(text.rfind("metric,", 0) == 0);
    CHECK(text.find("nss") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + m.metrics.size());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "salmetrics/baselines.hpp"
#include "salmetrics/distribution_metrics.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"
#include "support/synthetic.hpp"

using namespace salmetrics;
using namespace salmetrics::testutil;

TEST_CASE("center prior peaks at the center and sums to one") {
    const Grid g = center_prior(33, 25);
    CHECK(grid_sum(g) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(grid_min(g) > 0.0);

    std::size_t argmax = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.v[i] > g.v[argmax]) argmax = i;
    CHECK(argmax == 12 * 33 + 16);

    // Left-right and top-bottom symmetry around the odd-sized center.
    CHECK(g.at(0, 12) == doctest::Approx(g.at(32, 12)).epsilon(1e-12));
    CHECK(g.at(16, 0) == doctest::Approx(g.at(16, 24)).epsilon(1e-12));
    // Wider than tall: the horizontal profile decays more slowly.
    CHECK(g.at(16 + 8, 12) > g.at(16, 12 - 8));

    CHECK_THROWS_AS(center_prior(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(center_prior(5, 5, 0.0), std::invalid_argument);
}

TEST_CASE("chance uniform is the flat distribution") {
    const Grid g = chance_uniform(8, 4);
    CHECK(grid_is_constant(g));
    CHECK(g.v[0] == doctest::Approx(1.0 / 32.0));
    CHECK(grid_sum(g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("permutation control swaps in a different image") {
    SynthSpec spec;
    spec.n_images = 4;
    spec.n_observers = 3;
    const auto images = make_synthetic_images(spec);

    const ViewingGeometry geom{8.0};
    const Grid g = permutation_control("img001", images[1].width, images[1].height, images, geom, 5);
    CHECK(grid_sum(g) == doctest::Approx(1.0).epsilon(1e-9));

    // Deterministic in the seed.
    const Grid again =
        permutation_control("img001", images[1].width, images[1].height, images, geom, 5);
    CHECK(g.v == again.v);

    // The control must not reuse the target's own fixations.
    const BinaryFixationMap own =
        rasterize_fixations(images[1].fixations, images[1].width, images[1].height);
    const Grid self_map = blur_to_fixation_map(own, geom);
    CHECK(kl(g, normalize_sum(self_map)) > 1e-6);

    const std::vector<DatasetImage> only{images[1]};
    CHECK_THROWS_WITH_AS(permutation_control("img001", 64, 64, only, geom, 5),
                         "no other image available", std::invalid_argument);
}

TEST_CASE("single observer map uses exactly one observer") {
    SynthSpec spec;
    spec.n_images = 1;
    spec.n_observers = 2;
    spec.fix_per_observer = 6;
    const auto images = make_synthetic_images(spec);
    const FixationSet& fs = images[0].fixations;

    const ViewingGeometry geom{8.0};
    const Grid m0 = single_observer_map(fs, 0, images[0].width, images[0].height, geom);
    CHECK(grid_sum(m0) == doctest::Approx(1.0).epsilon(1e-9));

    // Mass concentrates near that observer's own fixations.
    double at_own = 0.0;
    for (const Point& p : fs.observers[0].points) at_own += m0.at(p.x, p.y);
    const Grid m1 = single_observer_map(fs, 1, images[0].width, images[0].height, geom);
    double at_other = 0.0;
    for (const Point& p : fs.observers[0].points) at_other += m1.at(p.x, p.y);
    CHECK(at_own > at_other);

    CHECK_THROWS_WITH_AS(single_observer_map(fs, 7, images[0].width, images[0].height, geom),
                         "observer index out of range", std::invalid_argument);
}

TEST_CASE("split observer scores are deterministic and need headroom") {
    SynthSpec spec;
    spec.n_images = 1;
    spec.n_observers = 8;
    spec.fix_per_observer = 12;
    const auto images = make_synthetic_images(spec);
    const FixationSet& fs = images[0].fixations;

    EvalParams params;
    params.geom.pixels_per_degree = 8.0;
    params.seed = 11;

    const double s1 = split_observer_score(fs, images[0].width, images[0].height, 2, MetricId::Nss,
                                           params, 4);
    CHECK(s1 == split_observer_score(fs, images[0].width, images[0].height, 2, MetricId::Nss,
                                     params, 4));
    // Observers agree with each other far above chance.
    CHECK(s1 > 0.5);

    CHECK_THROWS_WITH_AS(split_observer_score(fs, images[0].width, images[0].height, 5,
                                              MetricId::Nss, params, 4),
                         "insufficient observers for split", std::invalid_argument);
}

TEST_CASE("noiseless power law recovery") {
    std::vector<std::pair<int, double>> pts;
    for (int n = 1; n <= 19; ++n) pts.emplace_back(n, 2.0 / n + 5.0);

    const FitResult fit = empirical_limit(pts, {0.0, 10.0});
    CHECK(fit.c == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(fit.a == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(fit.b == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(fit.b <= 0.0);
    CHECK(fit.n_points == 19);
    CHECK(fit.ci_low <= fit.c);
    CHECK(fit.ci_high >= fit.c);
    // Noiseless data pins the interval tight around the asymptote.
    CHECK(fit.ci_high - fit.ci_low < 1e-3);
}

TEST_CASE("power fit keeps the exponent nonpositive and clamps to range") {
    // Increasing scores: the saturating fit wants b > 0, the constraint
    // forces the boundary instead.
    std::vector<std::pair<int, double>> rising;
    for (int n = 1; n <= 10; ++n) rising.emplace_back(n, 0.1 * n);
    const FitResult fit = empirical_limit(rising, {0.0, 1.0});
    CHECK(fit.b <= 0.0);
    CHECK(fit.c >= 0.0);
    CHECK(fit.c <= 1.0);
    CHECK(fit.ci_low >= 0.0);
    CHECK(fit.ci_high <= 1.0);

    std::vector<std::pair<int, double>> two = {{1, 0.5}, {2, 0.6}};
    CHECK_THROWS_WITH_AS(empirical_limit(two, {0.0, 1.0}),
                         "need >= 3 distinct group sizes for the fit", std::invalid_argument);

    // Duplicate n values collapse to one distinct size each.
    std::vector<std::pair<int, double>> dup = {{1, 0.5}, {1, 0.55}, {2, 0.6}, {2, 0.62}};
    CHECK_THROWS_AS(empirical_limit(dup, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("noisy power fits still bracket the asymptote") {
    // 1% multiplicative noise; the interval should cover the true c in the
    // vast majority of trials.
    int covered = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(99, static_cast<std::uint64_t>(t)));
        std::vector<std::pair<int, double>> pts;
        for (int n = 1; n <= 19; ++n) {
            const double clean = 2.0 / n + 5.0;
            pts.emplace_back(n, clean * (1.0 + 0.01 * rng.normal()));
        }
        const FitResult fit = empirical_limit(pts, {0.0, 10.0});
        if (fit.ci_low <= 5.0 && 5.0 <= fit.ci_high) ++covered;
    }
    CHECK(covered >= trials * 8 / 10);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "salmetrics/distribution_metrics.hpp"
#include "salmetrics/emd.hpp"
#include "salmetrics/rng.hpp"
#include "salmetrics/transforms.hpp"
#include "support/synthetic.hpp"

using namespace salmetrics;
using namespace salmetrics::testutil;

namespace {

Grid make2x2(double a, double b, double c, double d) {
    Grid g(2, 2, 0.0);
    g.v = {a, b, c, d};
    return g;
}

}  // namespace

TEST_CASE("sim of reversed histograms") {
    const Grid p = make2x2(0.1, 0.2, 0.3, 0.4);
    const Grid q = make2x2(0.4, 0.3, 0.2, 0.1);
    CHECK(sim(p, q) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(sim(p, p) == doctest::Approx(1.0).epsilon(1e-15));
    // Inputs are sum-normalized internally, so scale drops out.
    Grid scaled = p;
    for (double& v : scaled.v) v *= 37.0;
    CHECK(sim(scaled, q) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS_WITH_AS(sim(p, Grid(3, 1, 1.0)), "dimension mismatch", std::invalid_argument);
}

TEST_CASE("cc of anti-correlated and identical maps") {
    const Grid p = make2x2(0.1, 0.2, 0.3, 0.4);
    const Grid q = make2x2(0.4, 0.3, 0.2, 0.1);
    CHECK(cc(p, q) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(cc(p, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(cc(p, Grid(2, 2, 0.5)), "zero variance", std::invalid_argument);
    CHECK_THROWS_WITH_AS(cc(Grid(2, 2, 0.5), q), "zero variance", std::invalid_argument);
}

TEST_CASE("kl divergence oracle") {
    const Grid p = make2x2(0.1, 0.2, 0.3, 0.4);
    const Grid q = make2x2(0.4, 0.3, 0.2, 0.1);
    CHECK(kl(p, q) == doctest::Approx(0.4564348191467822).epsilon(1e-12));
    // The epsilon guard inside the log leaves a residual of order eps.
    CHECK(std::abs(kl(p, p)) <= 1e-9);
    CHECK(kl_symmetric(p, q) == doctest::Approx(0.9128696382935645).epsilon(1e-12));
    CHECK(kl_symmetric(p, q) == doctest::Approx(kl(p, q) + kl(q, p)).epsilon(1e-15));

    // Zero target bins contribute nothing even where P is zero.
    const Grid pz = make2x2(0.5, 0.5, 0.0, 0.0);
    const Grid qz = make2x2(1.0, 0.0, 0.0, 0.0);
    CHECK(kl(pz, qz) == doctest::Approx(std::log(1.0 / 0.5)).epsilon(1e-9));

    CHECK_THROWS_WITH_AS(kl(make2x2(0.1, 0.1, 0.1, 0.1), q), "unnormalized input",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(kl(p, make2x2(0.9, 0.9, 0.9, 0.9)), "unnormalized input",
                         std::invalid_argument);
}

TEST_CASE("unmatched prediction mass is penalized by kl") {
    // Mass on a fixated pixel missing from P drives the divergence up.
    const Grid q = make2x2(0.7, 0.1, 0.1, 0.1);
    const Grid close_p = make2x2(0.6, 0.2, 0.1, 0.1);
    const Grid far_p = make2x2(0.1, 0.1, 0.1, 0.7);
    CHECK(kl(close_p, q) < kl(far_p, q));
}

TEST_CASE("average ranks with ties") {
    const std::vector<double> r = average_ranks({1.0, 2.0, 2.0, 5.0});
    REQUIRE(r.size() == 4);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.5);
    CHECK(r[2] == 2.5);
    CHECK(r[3] == 4.0);
    CHECK(average_ranks({}).empty());
    CHECK(average_ranks({3.0})[0] == 1.0);
}

TEST_CASE("spearman correlation of maps") {
    Grid p(2, 2, 0.0);
    p.v = {1.0, 2.0, 2.0, 5.0};
    Grid q(2, 2, 0.0);
    q.v = {10.0, 9.0, 8.0, 7.0};
    CHECK(spearman_cc_maps(p, q) == doctest::Approx(-0.9486832980505138).epsilon(1e-12));
    CHECK(spearman_cc_maps(p, p) == doctest::Approx(1.0).epsilon(1e-12));

    // Any monotone transform of either input leaves the ranks alone.
    Grid pexp = p;
    for (double& v : pexp.v) v = std::exp(v);
    CHECK(spearman_cc_maps(pexp, q) == doctest::Approx(spearman_cc_maps(p, q)).epsilon(1e-12));
}

TEST_CASE("emd on two-pixel and corner cases") {
    Grid a(2, 1, 0.0), b(2, 1, 0.0);
    a.v = {1.0, 0.0};
    b.v = {0.0, 1.0};
    CHECK(emd(a, b, 1.0).cost == doctest::Approx(1.0).epsilon(1e-12));

    Grid c(2, 2, 0.0), d(2, 2, 0.0);
    c.v = {1.0, 0.0, 0.0, 0.0};
    d.v = {0.0, 0.0, 0.0, 1.0};
    CHECK(emd(c, d, 1.0).cost == doctest::Approx(1.4142135623730951).epsilon(1e-12));

    // One unit split across two bins at distance 1 each.
    Grid e(4, 1, 0.0), f(4, 1, 0.0);
    e.v = {1.0, 0.0, 0.0, 0.0};
    f.v = {0.0, 0.5, 0.5, 0.0};
    // Half the mass moves 1 pixel, half moves 2.
    CHECK(emd(e, f, 1.0).cost == doctest::Approx(1.5).epsilon(1e-12));

    const Grid g = random_smooth_map(12, 9, 3.0, 3);
    const EmdSolution self = emd(g, g, 1.0);
    CHECK(self.cost == 0.0);
}

TEST_CASE("emd is symmetric and respects distance") {
    const Grid p = random_smooth_map(10, 8, 3.0, 1);
    const Grid q = random_smooth_map(10, 8, 3.0, 2);
    const double pq = emd(p, q, 1.0).cost;
    const double qp = emd(q, p, 1.0).cost;
    CHECK(pq == doctest::Approx(qp).epsilon(1e-9));
    CHECK(pq >= 0.0);

    // Moving the target farther away cannot lower the optimum.
    Grid src(8, 1, 0.0);
    src.v[0] = 1.0;
    double prev = 0.0;
    for (int shift = 1; shift < 8; ++shift) {
        Grid dst(8, 1, 0.0);
        dst.v[static_cast<std::size_t>(shift)] = 1.0;
        const double cost = emd(src, dst, 1.0).cost;
        CHECK(cost == doctest::Approx(static_cast<double>(shift)).epsilon(1e-9));
        CHECK(cost > prev);
        prev = cost;
    }
}

TEST_CASE("emd downscale controls the bin grid") {
    const Grid p = random_smooth_map(64, 32, 3.0, 4);
    const Grid q = random_smooth_map(64, 32, 3.0, 5);
    const EmdSolution sol = emd(p, q, 1.0 / 32.0);
    CHECK(sol.bins_w == 2);
    CHECK(sol.bins_h == 1);
    CHECK(sol.scale_factor == doctest::Approx(1.0 / 32.0));

    // Floor of one bin per axis.
    const EmdSolution tiny = emd(p, q, 1e-6);
    CHECK(tiny.bins_w == 1);
    CHECK(tiny.bins_h == 1);
    CHECK(tiny.cost == doctest::Approx(0.0));

    // Dims are reconciled by resizing P onto Q's frame.
    const Grid small = random_smooth_map(16, 8, 3.0, 6);
    CHECK_NOTHROW(emd(small, q, 1.0 / 8.0));
}

TEST_CASE("emd flows balance their marginals") {
    Grid p(3, 1, 0.0), q(3, 1, 0.0);
    p.v = {0.75, 0.25, 0.0};
    q.v = {0.0, 0.25, 0.75};
    const EmdSolution sol = emd(p, q, 1.0);

    std::vector<double> out(3, 0.0), in(3, 0.0);
    double flow_cost = 0.0;
    for (const EmdFlow& f : sol.flows) {
        CHECK(f.amount > 0.0);
        out[static_cast<std::size_t>(f.from_bin)] += f.amount;
        in[static_cast<std::size_t>(f.to_bin)] += f.amount;
        flow_cost += f.amount * f.distance;
    }
    CHECK(flow_cost == doctest::Approx(sol.cost).epsilon(1e-12));
    CHECK(out[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(out[2] == doctest::Approx(0.0));
    CHECK(in[2] == doctest::Approx(0.75).epsilon(1e-12));

    std::ostringstream os;
    write_emd_json(sol, os);
    const std::string text = os.str();
    CHECK(text.find("\"cost\"") != std::string::npos);
    CHECK(text.find("\"flows\"") != std::string::npos);
}

TEST_CASE("solve_transport handles unbalanced tails") {
    // Histograms that sum to 1 within tolerance but not exactly: the residual
    // is charged at the maximum ground distance.
    std::vector<double> supply = {1.0, 0.0};
    std::vector<double> demand = {0.0, 1.0 - 5e-7};
    const EmdSolution sol = solve_transport(supply, demand, 2, 1);
    CHECK(sol.cost == doctest::Approx(1.0 - 5e-7 + 5e-7 * 1.0).epsilon(1e-9));
}

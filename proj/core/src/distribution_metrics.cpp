#include "salmetrics/distribution_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "salmetrics/transforms.hpp"

namespace salmetrics {

namespace {

void check_dims(const Grid& P, const Grid& Q) {
    if (!P.same_dims(Q)) throw std::invalid_argument("dimension mismatch");
    if (P.v.empty()) throw std::invalid_argument("empty grid");
}

void check_probabilistic(const Grid& g) {
    if (std::abs(grid_sum(g) - 1.0) > 1e-6) throw std::invalid_argument("unnormalized input");
}

}  // namespace

double sim(const Grid& P, const Grid& Q) {
    check_dims(P, Q);
    const Grid p = normalize_sum(P);
    const Grid q = normalize_sum(Q);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::min(p.v[i], q.v[i]);
    return acc;
}

double cc(const Grid& P, const Grid& Q) {
    check_dims(P, Q);
    const double mp = grid_mean(P);
    const double mq = grid_mean(Q);
    double cov = 0.0, vp = 0.0, vq = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double a = P.v[i] - mp;
        const double b = Q.v[i] - mq;
        cov += a * b;
        vp += a * a;
        vq += b * b;
    }
    if (vp <= 0.0 || vq <= 0.0) throw std::invalid_argument("zero variance");
    return cov / std::sqrt(vp * vq);
}

double kl(const Grid& P, const Grid& Q, double epsilon) {
    check_dims(P, Q);
    check_probabilistic(P);
    check_probabilistic(Q);
    double acc = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) {
        const double q = Q.v[i];
        if (q != 0.0) acc += q * std::log(epsilon + q / (epsilon + P.v[i]));
    }
    return acc;
}

double kl_symmetric(const Grid& P, const Grid& Q, double epsilon) {
    return kl(P, Q, epsilon) + kl(Q, P, epsilon);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // Tied block [i, j] shares the mean of ranks i+1 .. j+1.
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman_cc_maps(const Grid& P, const Grid& Q) {
    check_dims(P, Q);
    const std::vector<double> rp = average_ranks(P.v);
    const std::vector<double> rq = average_ranks(Q.v);
    Grid gp(P.width, P.height);
    Grid gq(P.width, P.height);
    gp.v = rp;
    gq.v = rq;
    return cc(gp, gq);
}

}  // namespace salmetrics

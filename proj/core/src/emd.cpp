#include "salmetrics/emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "salmetrics/transforms.hpp"

namespace salmetrics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-15;

struct Arc {
    int to;
    double cap;
    double cost;
    int rev;  // index of the reverse arc in graph[to]
};

class MinCostFlow {
public:
    explicit MinCostFlow(int n) : graph_(static_cast<std::size_t>(n)), n_(n) {}

    void add_arc(int from, int to, double cap, double cost) {
        graph_[static_cast<std::size_t>(from)].push_back(
            Arc{to, cap, cost, static_cast<int>(graph_[static_cast<std::size_t>(to)].size())});
        graph_[static_cast<std::size_t>(to)].push_back(
            Arc{from, 0.0, -cost, static_cast<int>(graph_[static_cast<std::size_t>(from)].size()) - 1});
    }

    const std::vector<Arc>& arcs_of(int node) const { return graph_[static_cast<std::size_t>(node)]; }

    // Successive shortest augmenting paths, Dijkstra with Johnson potentials.
    // All original costs are >= 0, so zero initial potentials are valid.
    // Returns total flow pushed from s to t.
    double run(int s, int t, long max_augments) {
        std::vector<double> potential(static_cast<std::size_t>(n_), 0.0);
        std::vector<double> dist(static_cast<std::size_t>(n_));
        std::vector<int> prev_node(static_cast<std::size_t>(n_));
        std::vector<int> prev_arc(static_cast<std::size_t>(n_));

        double pushed_total = 0.0;
        for (long iter = 0;; ++iter) {
            if (iter > max_augments)
                throw std::runtime_error("infeasible flow (signals solver bug): augmentation cap hit");

            std::fill(dist.begin(), dist.end(), kInf);
            dist[static_cast<std::size_t>(s)] = 0.0;
            using Entry = std::pair<double, int>;
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
            heap.emplace(0.0, s);
            while (!heap.empty()) {
                auto [d, u] = heap.top();
                heap.pop();
                if (d > dist[static_cast<std::size_t>(u)]) continue;
                const auto& arcs = graph_[static_cast<std::size_t>(u)];
                for (std::size_t k = 0; k < arcs.size(); ++k) {
                    const Arc& a = arcs[k];
                    if (a.cap <= kMassEps) continue;
                    // Residual reduced costs are nonnegative up to rounding;
                    // clamping keeps Dijkstra monotone, otherwise drift of
                    // order 1e-16 in the potentials can re-relax a node pair
                    // forever.
                    const double reduced =
                        std::max(0.0, a.cost + potential[static_cast<std::size_t>(u)] -
                                          potential[static_cast<std::size_t>(a.to)]);
                    const double nd = d + reduced;
                    if (nd < dist[static_cast<std::size_t>(a.to)] - 1e-18) {
                        dist[static_cast<std::size_t>(a.to)] = nd;
                        prev_node[static_cast<std::size_t>(a.to)] = u;
                        prev_arc[static_cast<std::size_t>(a.to)] = static_cast<int>(k);
                        heap.emplace(nd, a.to);
                    }
                }
            }
            if (dist[static_cast<std::size_t>(t)] == kInf) break;

            for (int v = 0; v < n_; ++v)
                if (dist[static_cast<std::size_t>(v)] < kInf)
                    potential[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];

            double bottleneck = kInf;
            for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
                const Arc& a = graph_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                                     [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
                bottleneck = std::min(bottleneck, a.cap);
            }
            if (!(bottleneck > kMassEps)) break;

            for (int v = t; v != s; v = prev_node[static_cast<std::size_t>(v)]) {
                Arc& a = graph_[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                               [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
                a.cap -= bottleneck;
                graph_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += bottleneck;
            }
            pushed_total += bottleneck;
        }
        return pushed_total;
    }

private:
    std::vector<std::vector<Arc>> graph_;
    int n_;
};

}  // namespace

EmdSolution solve_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                            int bins_w, int bins_h) {
    if (bins_w <= 0 || bins_h <= 0) throw std::invalid_argument("non-positive bin dims");
    const std::size_t n_bins = static_cast<std::size_t>(bins_w) * bins_h;
    if (supply.size() != n_bins || demand.size() != n_bins)
        throw std::invalid_argument("histogram size does not match bin dims");

    // Zero bins are pruned; only mass-bearing bins become nodes.
    std::vector<int> sup_bins, dem_bins;
    double sum_s = 0.0, sum_d = 0.0;
    for (std::size_t i = 0; i < n_bins; ++i) {
        if (supply[i] < 0.0 || demand[i] < 0.0)
            throw std::invalid_argument("negative histogram mass");
        if (supply[i] > 0.0) {
            sup_bins.push_back(static_cast<int>(i));
            sum_s += supply[i];
        }
        if (demand[i] > 0.0) {
            dem_bins.push_back(static_cast<int>(i));
            sum_d += demand[i];
        }
    }
    if (sup_bins.empty() || dem_bins.empty()) throw std::invalid_argument("zero mass");

    const int S = static_cast<int>(sup_bins.size());
    const int D = static_cast<int>(dem_bins.size());
    const int source = 0;
    const int sink = S + D + 1;

    auto bin_x = [bins_w](int bin) { return bin % bins_w; };
    auto bin_y = [bins_w](int bin) { return bin / bins_w; };
    auto ground_dist = [&](int a, int b) {
        const double dx = bin_x(a) - bin_x(b);
        const double dy = bin_y(a) - bin_y(b);
        return std::sqrt(dx * dx + dy * dy);
    };

    MinCostFlow mcf(S + D + 2);
    for (int i = 0; i < S; ++i)
        mcf.add_arc(source, 1 + i, supply[static_cast<std::size_t>(sup_bins[static_cast<std::size_t>(i)])], 0.0);
    for (int j = 0; j < D; ++j)
        mcf.add_arc(1 + S + j, sink, demand[static_cast<std::size_t>(dem_bins[static_cast<std::size_t>(j)])], 0.0);
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < D; ++j)
            mcf.add_arc(1 + i, 1 + S + j, kInf,
                        ground_dist(sup_bins[static_cast<std::size_t>(i)], dem_bins[static_cast<std::size_t>(j)]));

    const long max_augments = 64L * (S + D) + 256;
    const double moved = mcf.run(source, sink, max_augments);
    const double expected = std::min(sum_s, sum_d);
    if (std::abs(moved - expected) > 1e-9)
        throw std::runtime_error("infeasible flow (signals solver bug): moved " +
                                 std::to_string(moved) + " of " + std::to_string(expected));

    EmdSolution sol;
    sol.bins_w = bins_w;
    sol.bins_h = bins_h;

    // Flow on a forward supply->demand arc equals the accumulated cap of its
    // reverse arc.
    double flow_cost = 0.0;
    double max_dist = 0.0;
    for (int i = 0; i < S; ++i) {
        for (const Arc& a : mcf.arcs_of(1 + i)) {
            if (a.to <= S || a.to > S + D) continue;  // only middle arcs
            if (a.cost < 0.0) continue;               // reverse arcs live on demand nodes
            const int j = a.to - S - 1;
            const double dist = ground_dist(sup_bins[static_cast<std::size_t>(i)],
                                            dem_bins[static_cast<std::size_t>(j)]);
            max_dist = std::max(max_dist, dist);
            const Arc& rev = mcf.arcs_of(a.to)[static_cast<std::size_t>(a.rev)];
            if (rev.cap > 0.0) {
                sol.flows.push_back(EmdFlow{sup_bins[static_cast<std::size_t>(i)],
                                            dem_bins[static_cast<std::size_t>(j)], rev.cap, dist});
                flow_cost += rev.cap * dist;
            }
        }
    }
    // Unmatched-mass penalty; zero for unit-sum inputs up to rounding.
    sol.cost = flow_cost + std::abs(sum_s - sum_d) * max_dist;
    return sol;
}

EmdSolution emd(const Grid& P, const Grid& Q, double downscale) {
    if (!(downscale > 0.0 && downscale <= 1.0))
        throw std::invalid_argument("downscale must be in (0, 1]");
    if (P.v.empty() || Q.v.empty()) throw std::invalid_argument("empty grid");

    Grid p = P.same_dims(Q) ? P : resize(P, Q.width, Q.height);

    const int bw = std::max(1, static_cast<int>(std::ceil(Q.width * downscale)));
    const int bh = std::max(1, static_cast<int>(std::ceil(Q.height * downscale)));

    const Grid ps = normalize_sum(bw == p.width && bh == p.height ? p : resize(p, bw, bh));
    const Grid qs = normalize_sum(bw == Q.width && bh == Q.height ? Q : resize(Q, bw, bh));

    EmdSolution sol = solve_transport(ps.v, qs.v, bw, bh);
    sol.scale_factor = downscale;
    return sol;
}

void write_emd_json(const EmdSolution& sol, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["cost"] = sol.cost;
    doc["scale_factor"] = sol.scale_factor;
    doc["bins_w"] = sol.bins_w;
    doc["bins_h"] = sol.bins_h;
    auto& flows = doc["flows"] = nlohmann::ordered_json::array();
    for (const EmdFlow& f : sol.flows) {
        flows.push_back(nlohmann::ordered_json{
            {"from", f.from_bin}, {"to", f.to_bin}, {"amount", f.amount}, {"distance", f.distance}});
    }
    os << doc.dump(2) << '\n';
}

}  // namespace salmetrics

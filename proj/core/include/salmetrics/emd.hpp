#pragma once

#include <iosfwd>
#include <vector>

#include "salmetrics/grid.hpp"

namespace salmetrics {

// Earth mover's distance between two maps treated as mass distributions.
// Both maps are brought to common dims (P is resized to Q's dims if they
// differ), downscaled by `downscale` (ceil, floor of 1x1), sum-normalized,
// and the resulting transportation problem is solved exactly. Ground distance
// is Euclidean between bin centers in downscaled-pixel units, so reported
// costs scale with the downscale ratio.

struct EmdFlow {
    int from_bin = 0;  // index y*bins_w + x in the downscaled grid
    int to_bin = 0;
    double amount = 0.0;
    double distance = 0.0;
};

struct EmdSolution {
    double cost = 0.0;
    std::vector<EmdFlow> flows;
    double scale_factor = 1.0;
    int bins_w = 0;
    int bins_h = 0;
};

EmdSolution emd(const Grid& P, const Grid& Q, double downscale = 1.0 / 32.0);

// Exact min-cost transport between two unit-sum histograms laid out on a
// bins_w x bins_h grid (supply.size() == demand.size() == bins_w*bins_h).
// Zero bins are pruned before solving. Exposed separately so tests can drive
// the solver against brute-force enumeration.
EmdSolution solve_transport(const std::vector<double>& supply, const std::vector<double>& demand,
                            int bins_w, int bins_h);

// JSON flow list: {"cost":..,"scale_factor":..,"bins_w":..,"bins_h":..,
// "flows":[{"from":..,"to":..,"amount":..,"distance":..},..]}.
void write_emd_json(const EmdSolution& sol, std::ostream& os);

}  // namespace salmetrics

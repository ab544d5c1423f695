#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace salmetrics {

// Epsilon used inside the log-based metrics to regularize empty bins.
inline constexpr double kDefaultEpsilon = 2.2204e-16;

enum class MetricId {
    AucJudd,
    AucBorji,
    Sauc,
    Nss,
    Ig,
    Sim,
    Cc,
    Kl,
    KlSym,
    Spearman,
    Emd,
};

std::string_view metric_name(MetricId m);
std::optional<MetricId> parse_metric(std::string_view name);

// True for the divergence/distance metrics where smaller means better.
bool metric_lower_better(MetricId m);

// Theoretical score range, used to clamp fitted asymptotes. Unbounded ends
// are +/-infinity.
std::pair<double, double> metric_range(MetricId m);

// The eight headline metrics evaluated by default.
const std::vector<MetricId>& default_metrics();

// Every implemented metric, in canonical order.
const std::vector<MetricId>& all_metrics();

}  // namespace salmetrics

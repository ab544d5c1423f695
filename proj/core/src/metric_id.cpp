#include "salmetrics/metric_id.hpp"

#include <limits>

namespace salmetrics {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::string_view metric_name(MetricId m) {
    switch (m) {
        case MetricId::AucJudd: return "auc_judd";
        case MetricId::AucBorji: return "auc_borji";
        case MetricId::Sauc: return "sauc";
        case MetricId::Nss: return "nss";
        case MetricId::Ig: return "ig";
        case MetricId::Sim: return "sim";
        case MetricId::Cc: return "cc";
        case MetricId::Kl: return "kl";
        case MetricId::KlSym: return "kl_sym";
        case MetricId::Spearman: return "spearman";
        case MetricId::Emd: return "emd";
    }
    return "?";
}

std::optional<MetricId> parse_metric(std::string_view name) {
    for (MetricId m : all_metrics())
        if (metric_name(m) == name) return m;
    return std::nullopt;
}

bool metric_lower_better(MetricId m) {
    return m == MetricId::Kl || m == MetricId::KlSym || m == MetricId::Emd;
}

std::pair<double, double> metric_range(MetricId m) {
    switch (m) {
        case MetricId::AucJudd:
        case MetricId::AucBorji:
        case MetricId::Sauc:
        case MetricId::Sim: return {0.0, 1.0};
        case MetricId::Cc:
        case MetricId::Spearman: return {-1.0, 1.0};
        case MetricId::Kl:
        case MetricId::KlSym:
        case MetricId::Emd: return {0.0, kInf};
        case MetricId::Nss:
        case MetricId::Ig: return {-kInf, kInf};
    }
    return {-kInf, kInf};
}

const std::vector<MetricId>& default_metrics() {
    static const std::vector<MetricId> v = {
        MetricId::AucJudd, MetricId::Sauc, MetricId::Nss, MetricId::Ig,
        MetricId::Sim,     MetricId::Cc,   MetricId::Kl,  MetricId::Emd,
    };
    return v;
}

const std::vector<MetricId>& all_metrics() {
    static const std::vector<MetricId> v = {
        MetricId::AucJudd, MetricId::AucBorji, MetricId::Sauc,     MetricId::Nss,
        MetricId::Ig,      MetricId::Sim,      MetricId::Cc,       MetricId::Kl,
        MetricId::KlSym,   MetricId::Spearman, MetricId::Emd,
    };
    return v;
}

}  // namespace salmetrics

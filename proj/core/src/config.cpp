#include "salmetrics/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "json.hpp"

namespace salmetrics {

int BenchmarkConfig::resolved_jobs() const {
    if (jobs > 0) return jobs;
    if (const char* env = std::getenv("SALMETRICS_JOBS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("config: " + msg);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const char* where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(std::string("unknown key '") + key + "' in " + where);
}

}  // namespace

BenchmarkConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(path.string() + ": " + e.what());
    }
    if (!j.is_object()) fail("top level must be an object");

    check_keys(j,
               {"dataset_dir", "models", "metrics", "pixels_per_degree", "seed", "epsilon",
                "emd_downscale", "center_sigma_frac", "borji_trials", "sauc_trials",
                "sauc_images_per_trial", "splits_per_n", "jobs", "output_dir", "ablate_fractions",
                "level_sets_k"},
               "config");

    BenchmarkConfig cfg;
    if (!j.contains("dataset_dir")) fail("dataset_dir is required");
    cfg.dataset_dir = j.at("dataset_dir").get<std::string>();

    if (!j.contains("models") || !j.at("models").is_array() || j.at("models").empty())
        fail("models must be a non-empty array");
    for (const json& m : j.at("models")) {
        if (!m.is_object()) fail("each model must be an object");
        check_keys(m, {"name", "dir"}, "model");
        if (!m.contains("name") || !m.contains("dir")) fail("model needs name and dir");
        cfg.models.push_back(
            ModelSpec{m.at("name").get<std::string>(), m.at("dir").get<std::string>()});
    }

    if (j.contains("metrics")) {
        cfg.metrics.clear();
        for (const json& m : j.at("metrics")) {
            const std::string name = m.get<std::string>();
            const auto id = parse_metric(name);
            if (!id) fail("unknown metric '" + name + "'");
            cfg.metrics.push_back(*id);
        }
        if (cfg.metrics.empty()) fail("metrics must not be empty");
    }

    if (j.contains("pixels_per_degree")) cfg.pixels_per_degree = j.at("pixels_per_degree").get<double>();
    if (cfg.pixels_per_degree <= 0.0) fail("pixels_per_degree must be positive");
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (cfg.epsilon <= 0.0) fail("epsilon must be positive");
    if (j.contains("emd_downscale")) cfg.emd_downscale = j.at("emd_downscale").get<double>();
    if (j.contains("center_sigma_frac")) cfg.center_sigma_frac = j.at("center_sigma_frac").get<double>();
    if (cfg.center_sigma_frac <= 0.0) fail("center_sigma_frac must be positive");
    if (j.contains("borji_trials")) cfg.borji_trials = j.at("borji_trials").get<int>();
    if (j.contains("sauc_trials")) cfg.sauc_trials = j.at("sauc_trials").get<int>();
    if (j.contains("sauc_images_per_trial"))
        cfg.sauc_images_per_trial = j.at("sauc_images_per_trial").get<int>();
    if (cfg.borji_trials < 1 || cfg.sauc_trials < 1 || cfg.sauc_images_per_trial < 1)
        fail("trial counts must be >= 1");
    if (j.contains("splits_per_n")) cfg.splits_per_n = j.at("splits_per_n").get<int>();
    if (cfg.splits_per_n < 1) fail("splits_per_n must be >= 1");
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (cfg.jobs < 0) fail("jobs must be >= 0");
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("ablate_fractions")) {
        cfg.ablate_fractions.clear();
        for (const json& f : j.at("ablate_fractions")) {
            const double v = f.get<double>();
            if (!(v >= 0.0 && v < 1.0)) fail("ablate_fractions entries must be in [0, 1)");
            cfg.ablate_fractions.push_back(v);
        }
    }
    if (j.contains("level_sets_k")) cfg.level_sets_k = j.at("level_sets_k").get<int>();
    if (cfg.level_sets_k < 1) fail("level_sets_k must be >= 1");

    return cfg;
}

}  // namespace salmetrics

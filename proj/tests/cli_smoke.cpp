#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support/synthetic.hpp"
#include "support/test_util.hpp"

using namespace salmetrics;
using namespace salmetrics::testutil;

namespace {

int run_cli(const std::string& args, const std::filesystem::path& log) {
    const std::string cmd =
        std::string(SALMETRICS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct CliFixture {
    TempDir tmp;
    std::filesystem::path config_path;

    CliFixture() {
        SynthSpec spec;
        spec.n_images = 3;
        spec.n_observers = 3;
        spec.width = 64;
        spec.height = 48;
        spec.fix_per_observer = 8;
        const auto images = make_synthetic_images(spec);
        write_dataset(tmp / "ds", images);
        write_gt_density_maps(tmp / "m_gt", images, 8.0);
        write_center_maps(tmp / "m_center", images, 1.0 / 6.0);
        write_noise_maps(tmp / "m_noise", images, 3);

        config_path = tmp / "config.json";
        std::ofstream f(config_path);
        f << "{\n"
          << "  \"dataset_dir\": \"" << (tmp / "ds").string() << "\",\n"
          << "  \"models\": [\n"
          << "    {\"name\": \"gt\", \"dir\": \"" << (tmp / "m_gt").string() << "\"},\n"
          << "    {\"name\": \"center\", \"dir\": \"" << (tmp / "m_center").string() << "\"},\n"
          << "    {\"name\": \"noise\", \"dir\": \"" << (tmp / "m_noise").string() << "\"}\n"
          << "  ],\n"
          << "  \"metrics\": [\"nss\", \"cc\", \"sim\"],\n"
          << "  \"pixels_per_degree\": 8.0,\n"
          << "  \"borji_trials\": 5,\n"
          << "  \"sauc_trials\": 5,\n"
          << "  \"splits_per_n\": 2,\n"
          << "  \"seed\": 3,\n"
          << "  \"jobs\": 1\n"
          << "}\n";
    }
};

}  // namespace

TEST_CASE("evaluate subcommand writes scores and summary") {
    CliFixture fx;
    const auto out = fx.tmp / "out_eval";
    const int rc = run_cli("evaluate -c " + fx.config_path.string() + " -o " + out.string(),
                           fx.tmp / "eval.log");
    CHECK(rc == 0);
    CHECK(std::filesystem::exists(out / "scores.csv"));
    CHECK(std::filesystem::exists(out / "summary.json"));

    const std::string csv = slurp(out / "scores.csv");
    CHECK(csv.find("gt,") != std::string::npos);
    CHECK(csv.find(",nss,") != std::string::npos);
}

TEST_CASE("metric override narrows the run") {
    CliFixture fx;
    const auto out = fx.tmp / "out_narrow";
    const int rc = run_cli("evaluate -c " + fx.config_path.string() + " -m nss -o " + out.string(),
                           fx.tmp / "narrow.log");
    CHECK(rc == 0);
    const std::string csv = slurp(out / "scores.csv");
    CHECK(csv.find(",nss,") != std::string::npos);
    CHECK(csv.find(",cc,") == std::string::npos);

    const int bad = run_cli("evaluate -c " + fx.config_path.string() + " -m bogus -o " +
                                (fx.tmp / "out_bad_metric").string(),
                            fx.tmp / "badmetric.log");
    CHECK(bad != 0);
}

TEST_CASE("baselines limits ablate and sweep subcommands") {
    CliFixture fx;
    const auto out = fx.tmp / "out_more";

    CHECK(run_cli("baselines -c " + fx.config_path.string() + " -o " + out.string(),
                  fx.tmp / "base.log") == 0);
    CHECK(std::filesystem::exists(out / "baselines.csv"));

    CHECK(run_cli("limits -c " + fx.config_path.string() + " -o " + out.string(),
                  fx.tmp / "lim.log") != 0);
    // Three observers cap the split size at 1; the curve cannot be fit and
    // the command reports that as a failure with the warning on stderr.
    CHECK(slurp(fx.tmp / "lim.log").find("too few observers") != std::string::npos);

    CHECK(run_cli("ablate -c " + fx.config_path.string() + " -o " + out.string(),
                  fx.tmp / "abl.log") == 0);
    CHECK(std::filesystem::exists(out / "ablate.csv"));

    CHECK(run_cli("sweep -c " + fx.config_path.string() + " -p weight -o " + out.string(),
                  fx.tmp / "sweep.log") == 0);
    CHECK(std::filesystem::exists(out / "sweep.csv"));
    const std::string sweep_csv = slurp(out / "sweep.csv");
    CHECK(sweep_csv.find("weight") != std::string::npos);
    CHECK(sweep_csv.find("variance") == std::string::npos);

    CHECK(run_cli("correlate -c " + fx.config_path.string() + " -o " + out.string(),
                  fx.tmp / "corr.log") == 0);
    CHECK(std::filesystem::exists(out / "rank_matrix.csv"));
}

TEST_CASE("bad invocations exit nonzero") {
    CliFixture fx;
    CHECK(run_cli("", fx.tmp / "noargs.log") != 0);
    CHECK(run_cli("evaluate", fx.tmp / "nocfg.log") != 0);
    CHECK(run_cli("evaluate -c /nonexistent/config.json", fx.tmp / "badcfg.log") != 0);
    CHECK(run_cli("frobnicate -c " + fx.config_path.string(), fx.tmp / "badsub.log") != 0);

    // A config naming an empty dataset directory fails cleanly.
    std::filesystem::create_directories(fx.tmp / "empty_ds");
    const auto bad_cfg = fx.tmp / "bad_config.json";
    {
        std::ofstream f(bad_cfg);
        f << "{\"dataset_dir\": \"" << (fx.tmp / "empty_ds").string()
          << "\", \"models\": [{\"name\": \"gt\", \"dir\": \"" << (fx.tmp / "m_gt").string()
          << "\"}]}\n";
    }
    const int rc = run_cli("evaluate -c " + bad_cfg.string() + " -o " +
                               (fx.tmp / "out_bad").string(),
                           fx.tmp / "badds.log");
    CHECK(rc != 0);
    CHECK(slurp(fx.tmp / "badds.log").find("error:") != std::string::npos);
}

TEST_CASE("seed flag changes sampled metrics deterministically") {
    CliFixture fx;
    const auto out1 = fx.tmp / "seed_a";
    const auto out2 = fx.tmp / "seed_b";
    const auto out3 = fx.tmp / "seed_c";
    const std::string base = "evaluate -c " + fx.config_path.string() + " -m auc_borji -o ";
    CHECK(run_cli(base + out1.string() + " -s 10", fx.tmp / "s1.log") == 0);
    CHECK(run_cli(base + out2.string() + " -s 10", fx.tmp / "s2.log") == 0);
    CHECK(run_cli(base + out3.string() + " -s 11", fx.tmp / "s3.log") == 0);

    const std::string a = slurp(out1 / "scores.csv");
    CHECK(a == slurp(out2 / "scores.csv"));
    CHECK(a != slurp(out3 / "scores.csv"));
}

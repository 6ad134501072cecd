#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "aoimdp/experiment.hpp"

using namespace aoimdp;
namespace fs = std::filesystem;

namespace {

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  return line;
}

std::string golden(const char* name) {
  return first_line(fs::path(AOIMDP_GOLDEN_DIR) / name);
}

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "aoimdp_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty config file resolves to full defaults") {
  const auto path = temp_dir() / "empty.json";
  std::ofstream(path) << "";
  const auto cfg = cli::load_config(path.string());
  CHECK(cfg.experiment == "compare");
  CHECK(cfg.world.n_auvs == 1);
  CHECK(cfg.seeds.size() == 5);
}

TEST_CASE("missing config file raises a diagnostic") {
  CHECK_THROWS_WITH_AS(cli::load_config("/nonexistent/nope.json"),
                       doctest::Contains("cannot read config file"),
                       std::runtime_error);
}

TEST_CASE("invariant violations are named explicitly") {
  const auto path = temp_dir() / "bad.json";
  std::ofstream(path) << R"({"world": {"comm_range": -3.0}})";
  CHECK_THROWS_WITH_AS(cli::load_config(path.string()),
                       doctest::Contains("comm_range"), std::invalid_argument);
  const auto path2 = temp_dir() / "badparse.json";
  std::ofstream(path2) << "{nonsense";
  CHECK_THROWS_WITH_AS(cli::load_config(path2.string()),
                       doctest::Contains("parse error"), std::runtime_error);
}

TEST_CASE("resolved config round-trips through serialization") {
  cli::ExperimentConfig cfg;
  cfg.experiment = "ablate-delay";
  cfg.world.n_auvs = 2;
  cfg.world.world_seed = 77;
  cfg.delay_model.type = "poisson";
  cfg.seeds = {9, 8};
  const auto j = cli::config_to_json(cfg);
  const auto back = cli::config_from_json(j);
  CHECK(cli::config_to_json(back) == j);
  CHECK(cli::config_hash(back) == cli::config_hash(cfg));
}

TEST_CASE("manifest re-load reproduces the same config") {
  cli::ExperimentConfig cfg;
  cfg.world.n_nodes = 7;
  const auto path = temp_dir() / "manifest.json";
  cli::write_manifest(cfg, {"a.csv"}, path.string());
  const auto back = cli::load_config(path.string());
  CHECK(back.world.n_nodes == 7);
  CHECK(cli::config_hash(back) == cli::config_hash(cfg));
}

TEST_CASE("different configs hash differently") {
  cli::ExperimentConfig a, b;
  b.world.w_aoi += 1.0;
  CHECK(cli::config_hash(a) != cli::config_hash(b));
}

TEST_CASE("csv headers are pinned") {
  const auto dir = temp_dir();
  cli::write_curve_csv({}, (dir / "curve.csv").string());
  CHECK(first_line(dir / "curve.csv") == golden("curve_header.txt"));
  cli::write_comparison_csv({}, (dir / "cmp.csv").string());
  CHECK(first_line(dir / "cmp.csv") == golden("comparison_header.txt"));
  cli::write_trace_csv({}, (dir / "trace.csv").string());
  CHECK(first_line(dir / "trace.csv") == golden("trace_header.txt"));
  cli::write_summary_csv({}, (dir / "summary.csv").string());
  CHECK(first_line(dir / "summary.csv") == golden("summary_header.txt"));
}

TEST_CASE("quick aoi-check run passes its tolerance") {
  cli::AoiCheckConfig cfg;
  cfg.random_timelines = 20;
  cfg.dt_ratio = 1e-5;
  cfg.tolerance = 1e-3;
  const auto result = cli::run_aoi_check(cfg, 77);
  CHECK(result.pass);
  CHECK(result.timelines == 20);
}

TEST_CASE("ablation arms are matched to the sdm mean") {
  cli::ExperimentConfig cfg;
  const double m = cli::sdm_median_delay_steps(cfg);
  CHECK(m >= 1.0);
  CHECK(cli::mean_matched_spec(cfg, "exponential").exponential_rate ==
        doctest::Approx(1.0 / m));
  CHECK(cli::mean_matched_spec(cfg, "poisson").poisson_mean == doctest::Approx(m));
  CHECK(cli::mean_matched_spec(cfg, "geometric").geometric_p ==
        doctest::Approx(std::min(1.0, 1.0 / m)));
}

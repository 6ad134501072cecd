#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aoimdp/csv.hpp"
#include "aoimdp/experiment.hpp"

namespace fs = std::filesystem;
using namespace aoimdp;

namespace {

int log_level() {
  const char* v = std::getenv("AOI_MDP_LOG");
  if (!v) return 1;
  const std::string s = v;
  if (s == "quiet" || s == "0") return 0;
  if (s == "debug" || s == "2") return 2;
  return 1;
}

void logln(int level, const std::string& msg) {
  if (log_level() >= level) std::fprintf(stderr, "%s\n", msg.c_str());
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

cli::ExperimentConfig resolve(const CommonOpts& opts,
                              const std::string& experiment) {
  cli::ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = cli::load_config(opts.config_path);
  cfg.experiment = experiment;
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.has_seed) cfg.seeds = {opts.seed};
  cfg.validate();
  return cfg;
}

fs::path prepare_out_dir(const cli::ExperimentConfig& cfg) {
  fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output dir: " + dir.string());
  return dir;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AoI-MDP underwater data-collection laboratory"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "experiment config or manifest JSON");
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "single seed override")
        ->each([&](const std::string&) { opts.has_seed = true; });
  };

  auto* aoi_check = app.add_subcommand(
      "aoi-check", "closed-form vs numeric-integration AoI check");
  int random_n = 0;
  double dt_ratio = 0.0;
  aoi_check->add_option("--random", random_n, "number of random timelines");
  aoi_check->add_option("--dt-ratio", dt_ratio, "integration step / horizon");
  add_common(aoi_check);

  auto* bench = app.add_subcommand("estimator-bench",
                                   "delay and heading estimator benchmarks");
  add_common(bench);

  auto* train_cmd = app.add_subcommand("train", "train one arm and emit its learning curve");
  add_common(train_cmd);

  auto* compare = app.add_subcommand("compare", "AoI-MDP vs standard-MDP comparison");
  add_common(compare);

  auto* ablate = app.add_subcommand("ablate-delay", "delay-model ablation");
  std::string models_arg = "sdm,poisson,exponential,geometric";
  ablate->add_option("--models", models_arg, "comma-separated model list");
  add_common(ablate);

  CLI11_PARSE(app, argc, argv);

  try {
    if (aoi_check->parsed()) {
      auto cfg = resolve(opts, "aoi-check");
      if (random_n > 0) cfg.aoi_check.random_timelines = random_n;
      if (dt_ratio > 0.0) cfg.aoi_check.dt_ratio = dt_ratio;
      const auto result = cli::run_aoi_check(cfg.aoi_check, cfg.seeds.front());
      std::printf("timelines=%d max_rel_gap=%.3g tolerance=%.3g %s\n",
                  result.timelines, result.max_rel_gap, cfg.aoi_check.tolerance,
                  result.pass ? "PASS" : "FAIL");
      return result.pass ? 0 : 1;
    }

    if (bench->parsed()) {
      auto cfg = resolve(opts, "estimator-bench");
      const auto dir = prepare_out_dir(cfg);
      const auto result = cli::run_estimator_bench(cfg.estimation, cfg.seeds.front());
      std::printf("delay_exhaustive_exact=%d recovery_rate=%.4f heading_max_error=%.3g\n",
                  result.delay_exhaustive_exact ? 1 : 0,
                  result.delay_recovery_rate, result.heading_max_error);
      CsvWriter csv((dir / "estimator_bench.csv").string(),
                    {"metric", "value"});
      csv.row({"delay_exhaustive_exact",
               csv_num(result.delay_exhaustive_exact ? 1.0 : 0.0)});
      csv.row({"delay_recovery_rate", csv_num(result.delay_recovery_rate)});
      csv.row({"heading_max_error", csv_num(result.heading_max_error)});
      cli::write_manifest(cfg, {"estimator_bench.csv"},
                          (dir / "manifest.json").string());
      return 0;
    }

    if (train_cmd->parsed()) {
      auto cfg = resolve(opts, "train");
      const auto dir = prepare_out_dir(cfg);
      const bool with_y = cfg.formulation == "aoi";
      const auto formulation =
          with_y ? env::Formulation::AoiMdp : env::Formulation::StandardMdp;
      std::vector<std::string> outputs;
      for (std::uint64_t seed : cfg.seeds) {
        env::WorldConfig world = cfg.world;
        if (!world.world_seed) world.world_seed = seed;
        env::UnderwaterEnv environment(world, cfg.delay_model.build(world), seed);
        env::EnvView view(environment, formulation);
        rl::QPolicy policy(cfg.rl_space.discretizer(world, with_y),
                           cfg.rl_space.action_set(with_y), cfg.train.alpha,
                           cfg.train.gamma);
        const auto curve = rl::train(view, policy, cfg.train, seed);
        const std::string name = "curve_seed" + std::to_string(seed) + ".csv";
        cli::write_curve_csv(curve, (dir / name).string());
        outputs.push_back(name);
        logln(1, "trained seed " + std::to_string(seed));
      }
      cli::write_manifest(cfg, outputs, (dir / "manifest.json").string());
      return 0;
    }

    if (compare->parsed()) {
      auto cfg = resolve(opts, "compare");
      const auto dir = prepare_out_dir(cfg);
      const auto report = cli::run_comparison(cfg);
      cli::write_comparison_csv(report, (dir / "comparison.csv").string());
      cli::write_manifest(cfg, {"comparison.csv"}, (dir / "manifest.json").string());
      for (const auto& arm : report.arms)
        std::printf("%s aoi=%.4f reward=%.4f\n", arm.name.c_str(),
                    arm.aggregate.mean.time_avg_aoi,
                    arm.aggregate.mean.cumulative_reward);
      return 0;
    }

    if (ablate->parsed()) {
      auto cfg = resolve(opts, "ablate-delay");
      const auto dir = prepare_out_dir(cfg);
      const auto report = cli::run_delay_ablation(cfg, split_csv(models_arg));
      cli::write_comparison_csv(report, (dir / "ablation.csv").string());
      cli::write_manifest(cfg, {"ablation.csv"}, (dir / "manifest.json").string());
      for (const auto& arm : report.arms)
        std::printf("%s aoi=%.4f±%.4f sir=%.4f ec=%.4f\n", arm.name.c_str(),
                    arm.aggregate.mean.time_avg_aoi,
                    arm.aggregate.stddev.time_avg_aoi,
                    arm.aggregate.mean.sum_info_rate,
                    arm.aggregate.mean.energy_consumed);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

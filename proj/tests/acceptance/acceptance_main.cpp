// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier experiments share the library drivers with the CLI so a
// pass here certifies the shipped code paths.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "aoimdp/experiment.hpp"

using namespace aoimdp;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- C1
void criterion_aoi_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  cli::AoiCheckConfig cfg;  // 200 timelines, dt = horizon * 1e-6, tol 1e-4
  const auto result = cli::run_aoi_check(cfg, 20260824);
  const double secs = seconds_since(t0);
  report("C1 aoi closed form vs numeric oracle",
         result.pass && secs < 10.0,
         fmt("max_rel_gap=%.3g (tol 1e-4), %.1fs (limit 10s)",
             result.max_rel_gap, secs));
}

// ---------------------------------------------------------------- C2
void criterion_delay_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  est::DelayEstConfig cfg;
  cfg.known_sequence = est::pm1_sequence(64, 20260824);
  cfg.record_length = 512;
  cfg.noise_variance = 0.0;
  bool all_exact = true;
  std::size_t first_miss = 0;
  for (std::size_t y = 0; y <= 448; ++y) {
    const auto obs = est::synthesize_delayed_observation(cfg, y, 0);
    if (est::estimate_delay(cfg, obs).delay != y) {
      all_exact = false;
      first_miss = y;
      break;
    }
  }
  const double secs = seconds_since(t0);
  report("C2 noiseless delay recovery, exhaustive sweep",
         all_exact && secs < 5.0,
         all_exact ? fmt("449/449 exact, %.1fs (limit 5s)", secs)
                   : fmt("first miss at Y=%zu", first_miss));
}

// ---------------------------------------------------------------- C3
void criterion_delay_robustness() {
  double pinned = 0.0;
  {
    std::ifstream in(fs::path(AOIMDP_GOLDEN_DIR) / "delay_recovery_rate.txt");
    if (!(in >> pinned)) {
      report("C3 delay recovery rate vs pinned figure", false,
             "golden file missing or unreadable");
      return;
    }
  }
  est::DelayEstConfig cfg;
  cfg.known_sequence = est::pm1_sequence(64, 20260824);
  cfg.record_length = 512;
  cfg.noise_variance = cfg.signal_energy() / (10.0 * 64.0);  // per-sample SNR 10
  Rng rng(31337);
  int exact = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    const std::size_t y = rng.uniform_index(cfg.max_delay() + 1);
    const auto obs =
        est::synthesize_delayed_observation(cfg, y, derive_seed(424242, t));
    if (est::estimate_delay(cfg, obs).delay == y) ++exact;
  }
  const double rate = static_cast<double>(exact) / trials;
  report("C3 delay recovery rate vs pinned figure", rate >= pinned - 0.02,
         fmt("rate=%.3f, pinned=%.3f, floor=%.3f", rate, pinned, pinned - 0.02));
}

// ---------------------------------------------------------------- C4
void criterion_heading_accuracy() {
  const auto t0 = std::chrono::steady_clock::now();
  est::HeadingConfig cfg;
  cfg.carrier_frequency = 0.25;
  cfg.sensor_spacing = 1.0;
  cfg.propagation_speed = 1.0;
  cfg.sample_count = 256;
  cfg.grid_resolution = 1e-3;
  double max_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double beta = 0.1 + (1.4 - 0.1) * (i + 0.5) / 20.0;
    const auto sig = est::synthesize_heading_signal(cfg, beta, 0);
    max_err = std::max(max_err,
                       std::abs(est::estimate_heading(cfg, sig).heading - beta));
  }
  const double secs = seconds_since(t0);
  report("C4 noiseless heading accuracy over 20 targets",
         max_err <= 1e-3 && secs < 5.0,
         fmt("max_err=%.2e rad (limit 1e-3), %.1fs (limit 5s)", max_err, secs));
}

// ---------------------------------------------------------------- C5
void criterion_env_bookkeeping() {
  bool ok = true;
  std::string detail = "aoi equality exact, conservation <= 1e-9";
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    env::WorldConfig world;
    world.n_auvs = 2;
    world.horizon_steps = 80;
    cli::DelayModelSpec spec;  // sdm
    env::UnderwaterEnv e(world, spec.build(world), seed);
    e.reset(seed);
    const double initial = world.n_nodes * world.node_data_bits;
    Rng rng(seed);
    bool done = false;
    while (!done) {
      std::vector<env::ActionTuple> acts;
      for (int i = 0; i < world.n_auvs; ++i)
        acts.push_back({rng.uniform(0.0, 2.0), rng.uniform(-1.5, 1.5),
                        static_cast<int>(rng.uniform_index(3))});
      done = e.step(acts).done;
      if (std::abs(e.total_collected_data() + e.total_remaining_data() -
                   initial) > 1e-9) {
        ok = false;
        detail = fmt("conservation broken at clock %.0f", e.clock());
        break;
      }
    }
    double mean = 0.0;
    for (int i = 0; i < world.n_auvs; ++i)
      mean += aoi::time_averaged_aoi(e.timeline(i)).time_avg_aoi;
    mean /= world.n_auvs;
    if (e.stats().time_avg_aoi != mean) {
      ok = false;
      detail = "episode aoi differs from the closed form";
    }
  }
  report("C5 environment bookkeeping", ok, detail);
}

// ---------------------------------------------------------------- C6
env::WorldConfig micro_world() {
  env::WorldConfig world;
  world.arena_width = 3.0;
  world.arena_height = 3.0;
  world.n_auvs = 1;
  world.n_nodes = 1;
  world.node_data_bits = 30.0;
  world.comm_range = 1.2;
  world.v_max = 1.0;
  world.turn_max = M_PI / 2.0;
  world.move_energy_per_m = 0.5;
  world.comms_energy_per_step = 0.02;
  world.horizon_steps = 8;
  world.w_rate = 1.0;
  world.w_energy = 0.05;
  world.w_aoi = 0.5;
  world.rate_max = 5.0;
  world.snr_k = 10.0;
  world.z_max = 1;
  world.reference_x = 1.5;
  world.reference_y = 1.5;
  world.world_seed = 11;
  return world;
}

// Exhaustive enumeration of every action sequence on the deterministic
// micro-MDP; the true optimum for the cumulative scalarized reward.
double micro_optimum(const env::WorldConfig& world,
                     const std::vector<env::ActionTuple>& actions,
                     std::uint64_t seed) {
  struct Search {
    const std::vector<env::ActionTuple>& actions;
    double best = -1e18;
    void dfs(env::UnderwaterEnv e, double ret) {
      if (e.done()) {
        best = std::max(best, ret);
        return;
      }
      for (const auto& a : actions) {
        env::UnderwaterEnv branch = e;
        const auto out = branch.step({a});
        dfs(std::move(branch), ret + out.rewards[0].scalar);
      }
    }
  } search{actions};
  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, seed);
  e.reset(seed);
  search.dfs(std::move(e), 0.0);
  return search.best;
}

void criterion_micro_mdp() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto world = micro_world();
  const std::uint64_t seed = 11;

  const auto action_set = rl::ActionSet::build(
      {0.0, 1.0}, {0.0, M_PI / 2.0}, {0, 1});
  const double optimum = micro_optimum(world, action_set.actions, seed);

  rl::Discretizer disc;
  disc.arena_width = world.arena_width;
  disc.arena_height = world.arena_height;
  disc.data_total = world.node_data_bits;
  disc.pos_bins = 3;
  disc.heading_bins = 8;
  disc.data_levels = 3;
  disc.y_bins = 2;
  disc.y_cap = 3.0;
  disc.include_y = true;

  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, seed);
  env::EnvView view(e, env::Formulation::AoiMdp);
  rl::QPolicy policy(disc, action_set, 0.3, 0.95);
  rl::TrainConfig tc;
  tc.episodes = 5000;
  tc.eval_interval = 5000;
  tc.eval_episodes = 1;
  tc.alpha = 0.3;
  tc.gamma = 0.95;
  const auto curve = rl::train(view, policy, tc, seed);
  const double greedy = curve.back().stats.mean.cumulative_reward;
  const double secs = seconds_since(t0);
  const double floor = optimum - 0.05 * std::abs(optimum);
  report("C6 micro-MDP tabular optimality",
         greedy >= floor && secs < 60.0,
         fmt("greedy=%.3f optimum=%.3f floor=%.3f, %.1fs (limit 60s)", greedy,
             optimum, floor, secs));
}

// ---------------------------------------------------------------- C7 / C8
cli::ExperimentConfig desk_config() {
  cli::ExperimentConfig cfg;
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.world.horizon_steps = 120;
  cfg.world.w_aoi = 30.0;
  cfg.world.propagation_speed = 3.0;
  cfg.train.episodes = 3000;
  cfg.train.eval_interval = 3000;
  cfg.train.eval_episodes = 3;
  cfg.train.alpha = 0.2;
  cfg.train.gamma = 0.95;
  cfg.rl_space.pos_bins = 4;
  cfg.rl_space.heading_bins = 4;
  cfg.rl_space.data_levels = 2;
  cfg.rl_space.y_bins = 3;
  cfg.rl_space.y_cap = 9.0;
  cfg.rl_space.speeds = {0.0, 2.0};
  cfg.rl_space.turns = {-M_PI / 2.0, 0.0, M_PI / 2.0};
  cfg.rl_space.waits = {0, 1};
  return cfg;
}

void criterion_formulation_comparison() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = desk_config();
  const auto report_cmp = cli::run_comparison(cfg);
  const auto& aoi_arm = report_cmp.arms[0];
  const auto& std_arm = report_cmp.arms[1];
  int aoi_wins = 0, reward_wins = 0;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (aoi_arm.per_seed[i].time_avg_aoi < std_arm.per_seed[i].time_avg_aoi)
      ++aoi_wins;
    if (aoi_arm.per_seed[i].cumulative_reward >=
        std_arm.per_seed[i].cumulative_reward)
      ++reward_wins;
  }
  const bool pass =
      aoi_arm.aggregate.mean.time_avg_aoi <
          std_arm.aggregate.mean.time_avg_aoi &&
      aoi_arm.aggregate.mean.cumulative_reward >=
          std_arm.aggregate.mean.cumulative_reward &&
      aoi_wins >= 4 && reward_wins >= 4;
  report("C7 AoI-MDP vs standard MDP (directional)", pass,
         fmt("aoi %.3f vs %.3f, reward %.2f vs %.2f, wins %d/%d of %zu, %.0fs",
             aoi_arm.aggregate.mean.time_avg_aoi,
             std_arm.aggregate.mean.time_avg_aoi,
             aoi_arm.aggregate.mean.cumulative_reward,
             std_arm.aggregate.mean.cumulative_reward, aoi_wins, reward_wins,
             cfg.seeds.size(), seconds_since(t0)));
}

void criterion_delay_ablation() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = desk_config();
  const auto report_abl = cli::run_delay_ablation(
      cfg, {"sdm", "poisson", "exponential", "geometric"});
  double sdm_aoi = 0.0;
  double best_other = 1e18;
  std::ostringstream table;
  for (const auto& arm : report_abl.arms) {
    table << arm.name << "=" << arm.aggregate.mean.time_avg_aoi << " ";
    if (arm.name == "sdm")
      sdm_aoi = arm.aggregate.mean.time_avg_aoi;
    else
      best_other = std::min(best_other, arm.aggregate.mean.time_avg_aoi);
  }
  report("C8 delay-model ablation ordering", sdm_aoi < best_other,
         fmt("%s(%.0fs)", table.str().c_str(), seconds_since(t0)));
}

// ---------------------------------------------------------------- C9
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_determinism() {
  auto cfg = desk_config();
  cfg.seeds = {7, 8};
  cfg.train.episodes = 40;
  cfg.train.eval_interval = 40;
  cfg.train.eval_episodes = 2;

  const auto dir = fs::temp_directory_path() / "aoimdp_acceptance";
  fs::create_directories(dir);
  const auto manifest = dir / "manifest.json";

  cfg.out_dir = (dir / "run1").string();
  fs::create_directories(cfg.out_dir);
  cli::write_comparison_csv(cli::run_comparison(cfg),
                            (fs::path(cfg.out_dir) / "comparison.csv").string());
  cli::write_manifest(cfg, {"comparison.csv"}, manifest.string());

  // Re-run strictly from the manifest.
  auto replay = cli::load_config(manifest.string());
  replay.out_dir = (dir / "run2").string();
  fs::create_directories(replay.out_dir);
  cli::write_comparison_csv(
      cli::run_comparison(replay),
      (fs::path(replay.out_dir) / "comparison.csv").string());

  const std::string a = slurp(dir / "run1" / "comparison.csv");
  const std::string b = slurp(dir / "run2" / "comparison.csv");
  report("C9 manifest re-run byte-identical", !a.empty() && a == b,
         fmt("%zu bytes compared", a.size()));
}

}  // namespace

int main() {
  criterion_aoi_oracle();
  criterion_delay_exactness();
  criterion_delay_robustness();
  criterion_heading_accuracy();
  criterion_env_bookkeeping();
  criterion_micro_mdp();
  criterion_formulation_comparison();
  criterion_delay_ablation();
  criterion_determinism();
  std::printf("%s (%d failure%s)\n", failures == 0 ? "ACCEPTANCE OK" : "ACCEPTANCE FAILED",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}

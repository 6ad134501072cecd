#pragma once

#include <string>
#include <vector>

#include "aoimdp/config.hpp"
#include "aoimdp/env.hpp"
#include "aoimdp/qlearning.hpp"

namespace aoimdp::cli {

// Random sawtooth timeline with up to max_updates updates, Y and Z in (0, 10].
aoi::UpdateTimeline random_timeline(Rng& rng, int max_updates);

struct AoiCheckResult {
  double max_rel_gap = 0.0;
  int timelines = 0;
  bool pass = false;
};
AoiCheckResult run_aoi_check(const AoiCheckConfig& cfg, std::uint64_t seed);

struct EstimatorBenchResult {
  bool delay_exhaustive_exact = false;  // noiseless sweep over every true Y
  double delay_recovery_rate = 0.0;     // Monte-Carlo exact-recovery at cfg.snr
  double heading_max_error = 0.0;       // noiseless sweep, radians
};
EstimatorBenchResult run_estimator_bench(const EstimationBenchConfig& cfg,
                                         std::uint64_t seed);

struct ArmResult {
  std::string name;
  std::vector<std::uint64_t> seeds;
  std::vector<env::EpisodeStats> per_seed;  // final greedy evaluation means
  rl::StatsAggregate aggregate;             // across seeds
};

struct ComparisonReport {
  std::vector<ArmResult> arms;
};

// Trains one (formulation, delay model) arm per seed and evaluates greedily.
ArmResult run_arm(const ExperimentConfig& cfg, const std::string& arm_name,
                  env::Formulation formulation,
                  const DelayModelSpec& delay_spec, int final_eval_episodes = 5);

// AoI-MDP vs standard-MDP on matched seeds and world.
ComparisonReport run_comparison(const ExperimentConfig& cfg);

// Delay-model ablation (AoI-MDP formulation throughout); the stochastic
// models' parameters are matched to the SDM mean at the median distance to
// the reference, so arms differ by shape rather than scale.
ComparisonReport run_delay_ablation(const ExperimentConfig& cfg,
                                    const std::vector<std::string>& models);

// Mean-matched spec for one model type; exposed for tests.
DelayModelSpec mean_matched_spec(const ExperimentConfig& cfg,
                                 const std::string& type);
double sdm_median_delay_steps(const ExperimentConfig& cfg);

// CSV emission with pinned headers.
void write_curve_csv(const rl::LearningCurve& curve, const std::string& path);
void write_comparison_csv(const ComparisonReport& report, const std::string& path);
void write_trace_csv(const std::vector<env::TraceRow>& trace, const std::string& path);
void write_summary_csv(const std::vector<std::pair<std::string, env::EpisodeStats>>& rows,
                       const std::string& path);

}  // namespace aoimdp::cli

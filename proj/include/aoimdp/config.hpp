#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "aoimdp/delay_model.hpp"
#include "aoimdp/env.hpp"
#include "aoimdp/qlearning.hpp"

namespace aoimdp::cli {

// Parameter block for the delay model; turned into a DelayModel on demand.
struct DelayModelSpec {
  std::string type = "sdm";  // sdm | exponential | poisson | geometric | constant
  double exponential_rate = 0.2;
  double poisson_mean = 5.0;
  double geometric_p = 0.2;
  double constant_value = 2.0;
  // SDM knobs
  std::size_t replica_length = 32;
  std::size_t record_length = 160;
  double noise_variance = 0.1;
  std::uint64_t replica_seed = 7;

  delay::DelayModel build(const env::WorldConfig& world) const;
  void validate() const;
};

struct EstimationBenchConfig {
  // delay estimator benchmark
  std::size_t replica_length = 64;
  std::size_t record_length = 512;
  double snr = 10.0;  // per-sample SNR; sigma^2 = energy / (snr * M)
  int trials = 1000;
  // heading estimator benchmark
  std::size_t heading_samples = 256;
  double frequency_product = 0.25;  // F0 d / c
  double grid_resolution = 1e-3;
  int heading_sweep = 20;
};

struct RlSpaceConfig {
  int pos_bins = 8;
  int heading_bins = 8;
  int data_levels = 4;
  int y_bins = 4;
  double y_cap = 8.0;
  std::vector<double> speeds = {0.0, 1.0, 2.0};
  std::vector<double> turns = {-1.5707963267948966, 0.0, 1.5707963267948966};
  std::vector<int> waits = {0, 1, 2};

  rl::Discretizer discretizer(const env::WorldConfig& world, bool include_y) const;
  rl::ActionSet action_set(bool allow_wait) const;
};

struct AoiCheckConfig {
  int random_timelines = 200;
  double dt_ratio = 1e-6;
  double tolerance = 1e-4;
  int max_updates = 50;
};

struct ExperimentConfig {
  std::string experiment = "compare";  // aoi-check | estimator-bench | train |
                                       // compare | ablate-delay
  env::WorldConfig world;
  DelayModelSpec delay_model;
  rl::TrainConfig train;
  RlSpaceConfig rl_space;
  EstimationBenchConfig estimation;
  AoiCheckConfig aoi_check;
  std::string formulation = "aoi";  // for the train experiment: aoi | standard
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string out_dir = "out";

  void validate() const;
};

// Parses a config file (plain config JSON, or a manifest carrying the
// resolved config under "config"), applies defaults and validates.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// FNV-1a over the serialized resolved config; recorded in the manifest.
std::string config_hash(const ExperimentConfig& cfg);

void write_manifest(const ExperimentConfig& cfg,
                    const std::vector<std::string>& outputs,
                    const std::string& path);

}  // namespace aoimdp::cli

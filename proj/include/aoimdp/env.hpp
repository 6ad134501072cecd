#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aoimdp/aoi.hpp"
#include "aoimdp/delay_model.hpp"
#include "aoimdp/rng.hpp"

namespace aoimdp::env {

// Everything about the world is configuration. The defaults are a
// desk-scale construction (abstract units, slow propagation so the delay
// actually varies with position).
struct WorldConfig {
  double arena_width = 60.0;   // meters
  double arena_height = 60.0;
  int n_auvs = 1;
  int n_nodes = 3;
  double node_data_bits = 400.0;  // per node
  double comm_range = 12.0;       // meters
  double v_max = 2.0;             // m/s
  double turn_max = 1.5707963267948966;  // rad per step
  double move_energy_per_m = 1.0;        // J/m
  double comms_energy_per_step = 0.05;   // J per sub-step
  double sample_period = 1.0;            // seconds per sub-step
  double propagation_speed = 4.0;        // m/s for the observation signal
  int horizon_steps = 120;               // sub-steps
  double w_rate = 1.0;
  double w_energy = 0.05;
  double w_aoi = 2.0;
  double rate_max = 8.0;  // bits/step scale
  double snr_k = 100.0;   // SNR(dist) = k / dist^2
  int z_max = 2;          // wait-time bound, steps
  // Surface reference the observation signal travels to; delay context.
  double reference_x = 30.0;
  double reference_y = 30.0;
  // When set, node/AUV placement uses this seed so every episode shares
  // one layout; otherwise placement follows the reset seed.
  std::optional<std::uint64_t> world_seed;

  void validate() const;
};

struct ActionTuple {
  double speed = 0.0;   // [0, v_max]
  double turn = 0.0;    // [-turn_max, turn_max], applied over one step
  int wait_steps = 0;   // Z, [0, z_max]
};

struct RewardTuple {
  double rate_term = 0.0;      // bits collected this decision round
  double energy_term = 0.0;    // joules spent this decision round
  double aoi_increment = 0.0;  // change in the running time-averaged AoI
  double scalar = 0.0;         // w_rate*rate - w_energy*energy - w_aoi*aoi_inc
};

struct Pose {
  double x = 0.0, y = 0.0, heading = 0.0;
};

// World snapshot captured at transmit time and delivered Y steps later.
struct Observation {
  Pose pose;                    // the AUV's own pose at capture time
  double total_remaining = 0.0; // sum of node data at capture time, bits
  double nearest_dist = 0.0;    // to the nearest node with data, meters
  double nearest_bearing = 0.0; // relative bearing, radians
  double capture_time = 0.0;    // sub-steps
  double staleness = 0.0;       // age when delivered, Y in steps

  // Feature vector; includes staleness as the last entry only when asked.
  std::vector<double> flatten(bool include_staleness) const;
};

struct EpisodeStats {
  double time_avg_aoi = 0.0;     // mean over AUVs of timeline averages
  double energy_consumed = 0.0;  // J, all AUVs
  double sum_info_rate = 0.0;    // total bits collected
  double sir_per_step = 0.0;     // bits per elapsed sub-step
  double cumulative_reward = 0.0;
};

struct TraceRow {
  int macro_step = 0;
  int auv = 0;
  double clock = 0.0;
  Pose pose;
  double delay = 0.0;
  double wait = 0.0;
  double rate = 0.0;
  double energy = 0.0;
  double aoi_increment = 0.0;
  double reward = 0.0;
};

// Multi-AUV data-collection world with delayed observations. One decision
// round per AUV: wait Z sub-steps, act for one, transmit a fresh snapshot
// whose delay is drawn from the delay model; the next decision happens
// when every AUV has received its snapshot.
class UnderwaterEnv {
 public:
  UnderwaterEnv(WorldConfig cfg, delay::DelayModel model, std::uint64_t seed);

  std::vector<Observation> reset(std::uint64_t seed);

  struct StepResult {
    std::vector<Observation> observations;
    std::vector<RewardTuple> rewards;
    std::vector<bool> action_clamped;
    bool done = false;
  };
  StepResult step(const std::vector<ActionTuple>& actions);

  EpisodeStats stats() const;
  const aoi::UpdateTimeline& timeline(int auv) const { return auvs_.at(auv).timeline; }
  const WorldConfig& config() const { return cfg_; }
  double clock() const { return clock_; }
  bool done() const { return done_; }
  double total_remaining_data() const;
  double total_collected_data() const;
  const std::vector<Pose>& auv_poses() const;  // true current poses
  std::vector<double> node_remaining() const;
  std::vector<std::pair<double, double>> node_positions() const;

  void set_record_trace(bool on) { record_trace_ = on; }
  const std::vector<TraceRow>& trace() const { return trace_; }

 private:
  struct Node {
    double x = 0.0, y = 0.0;
    double remaining = 0.0;
  };
  struct AuvRuntime {
    Pose pose;
    aoi::UpdateTimeline timeline;
    double last_reception = 0.0;
    double running_avg_aoi = 0.0;
    Observation delivered;  // what the policy sees at the next decision
    double collected = 0.0;
    double energy = 0.0;
    double reward_sum = 0.0;
  };

  Observation capture_snapshot(const AuvRuntime& auv) const;
  double draw_delay_steps(const Pose& pose);
  double transfer_data(AuvRuntime& auv);

  WorldConfig cfg_;
  delay::DelayModel model_;
  Rng rng_;
  std::vector<AuvRuntime> auvs_;
  std::vector<Node> nodes_;
  mutable std::vector<Pose> pose_cache_;
  double initial_total_data_ = 0.0;
  double clock_ = 0.0;
  int macro_step_ = 0;
  bool done_ = false;
  bool record_trace_ = false;
  std::vector<TraceRow> trace_;
};

enum class Formulation { AoiMdp, StandardMdp };

// MDP interface over the environment. The AoI-MDP view exposes (s', Y) and
// accepts (a', Z) with the full scalarized reward; the standard-MDP view
// strips Y from the observation, forces Z = 0 and omits the AoI reward
// term. The world underneath is delayed either way.
class EnvView {
 public:
  EnvView(UnderwaterEnv& env, Formulation mode) : env_(&env), mode_(mode) {}

  Formulation mode() const { return mode_; }
  UnderwaterEnv& env() { return *env_; }

  std::size_t obs_dim() const;
  std::vector<std::vector<double>> reset(std::uint64_t seed);

  struct StepResult {
    std::vector<std::vector<double>> observations;
    std::vector<double> rewards;  // per the view's reward definition
    bool done = false;
  };
  StepResult step(std::vector<ActionTuple> actions);

 private:
  UnderwaterEnv* env_;
  Formulation mode_;
};

inline EnvView make_standard_mdp_view(UnderwaterEnv& env) {
  return EnvView(env, Formulation::StandardMdp);
}

}  // namespace aoimdp::env

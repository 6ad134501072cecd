#include "aoimdp/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoimdp::env {

void WorldConfig::validate() const {
  if (arena_width <= 0.0 || arena_height <= 0.0)
    throw std::invalid_argument("world: arena dimensions must be > 0");
  if (n_auvs < 1) throw std::invalid_argument("world: n_auvs must be >= 1");
  if (n_nodes < 0) throw std::invalid_argument("world: n_nodes must be >= 0");
  if (node_data_bits < 0.0) throw std::invalid_argument("world: node_data_bits must be >= 0");
  if (comm_range <= 0.0) throw std::invalid_argument("world: comm_range must be > 0");
  if (v_max <= 0.0) throw std::invalid_argument("world: v_max must be > 0");
  if (turn_max <= 0.0) throw std::invalid_argument("world: turn_max must be > 0");
  if (move_energy_per_m < 0.0 || comms_energy_per_step < 0.0)
    throw std::invalid_argument("world: energy coefficients must be >= 0");
  if (sample_period <= 0.0) throw std::invalid_argument("world: sample_period must be > 0");
  if (propagation_speed <= 0.0) throw std::invalid_argument("world: propagation_speed must be > 0");
  if (horizon_steps < 1) throw std::invalid_argument("world: horizon_steps must be >= 1");
  if (w_rate < 0.0 || w_energy < 0.0 || w_aoi < 0.0)
    throw std::invalid_argument("world: reward weights must be >= 0");
  if (rate_max <= 0.0 || snr_k <= 0.0)
    throw std::invalid_argument("world: rate_max and snr_k must be > 0");
  if (z_max < 0) throw std::invalid_argument("world: z_max must be >= 0");
}

std::vector<double> Observation::flatten(bool include_staleness) const {
  std::vector<double> v{pose.x,       pose.y,       pose.heading,
                        total_remaining, nearest_dist, nearest_bearing};
  if (include_staleness) v.push_back(staleness);
  return v;
}

UnderwaterEnv::UnderwaterEnv(WorldConfig cfg, delay::DelayModel model,
                             std::uint64_t seed)
    : cfg_(std::move(cfg)), model_(std::move(model)), rng_(seed) {
  cfg_.validate();
  model_.validate();
  reset(seed);
}

Observation UnderwaterEnv::capture_snapshot(const AuvRuntime& auv) const {
  Observation obs;
  obs.pose = auv.pose;
  obs.capture_time = clock_;
  double total = 0.0;
  double best = std::hypot(cfg_.arena_width, cfg_.arena_height);
  double bearing = 0.0;
  bool found = false;
  for (const Node& node : nodes_) {
    total += node.remaining;
    if (node.remaining <= 0.0) continue;
    const double d = std::hypot(node.x - auv.pose.x, node.y - auv.pose.y);
    if (!found || d < best) {
      best = d;
      bearing = std::atan2(node.y - auv.pose.y, node.x - auv.pose.x) -
                auv.pose.heading;
      found = true;
    }
  }
  obs.total_remaining = total;
  obs.nearest_dist = best;
  obs.nearest_bearing = std::remainder(bearing, 2.0 * M_PI);
  return obs;
}

double UnderwaterEnv::draw_delay_steps(const Pose& pose) {
  const double dist = std::hypot(pose.x - cfg_.reference_x, pose.y - cfg_.reference_y);
  const double raw = model_.sample_delay(rng_, dist);
  return static_cast<double>(std::max<long long>(std::llround(raw), 1));
}

double UnderwaterEnv::transfer_data(AuvRuntime& auv) {
  Node* best = nullptr;
  double best_d = cfg_.comm_range;
  for (Node& node : nodes_) {
    if (node.remaining <= 0.0) continue;
    const double d = std::hypot(node.x - auv.pose.x, node.y - auv.pose.y);
    if (d <= best_d) {
      best_d = d;
      best = &node;
    }
  }
  if (!best) return 0.0;
  const double d = std::max(best_d, 1e-6);
  const double rate = cfg_.rate_max * std::log2(1.0 + cfg_.snr_k / (d * d));
  const double bits = std::min(rate, best->remaining);
  best->remaining -= bits;
  auv.collected += bits;
  return bits;
}

std::vector<Observation> UnderwaterEnv::reset(std::uint64_t seed) {
  rng_ = Rng(derive_seed(seed, 1));
  Rng placement(derive_seed(cfg_.world_seed.value_or(seed), 2));

  nodes_.assign(static_cast<std::size_t>(cfg_.n_nodes), Node{});
  for (Node& node : nodes_) {
    node.x = placement.uniform(0.0, cfg_.arena_width);
    node.y = placement.uniform(0.0, cfg_.arena_height);
    node.remaining = cfg_.node_data_bits;
  }
  initial_total_data_ = cfg_.node_data_bits * cfg_.n_nodes;

  auvs_.assign(static_cast<std::size_t>(cfg_.n_auvs), AuvRuntime{});
  for (AuvRuntime& auv : auvs_) {
    auv.pose.x = placement.uniform(0.0, cfg_.arena_width);
    auv.pose.y = placement.uniform(0.0, cfg_.arena_height);
    auv.pose.heading = placement.uniform(0.0, 2.0 * M_PI);
  }

  clock_ = 0.0;
  macro_step_ = 0;
  done_ = false;
  trace_.clear();

  // Prime the pipeline: every AUV transmits the t=0 snapshot; the first
  // decision happens once all initial observations have arrived.
  std::vector<Observation> snapshots;
  std::vector<double> delays;
  double sync = 0.0;
  for (AuvRuntime& auv : auvs_) {
    snapshots.push_back(capture_snapshot(auv));
    const double y = draw_delay_steps(auv.pose);
    delays.push_back(y);
    sync = std::max(sync, y);
  }
  clock_ = sync;
  std::vector<Observation> out;
  for (std::size_t i = 0; i < auvs_.size(); ++i) {
    AuvRuntime& auv = auvs_[i];
    aoi::append_update(auv.timeline, delays[i], 0.0);
    auv.running_avg_aoi = aoi::time_averaged_aoi(auv.timeline).time_avg_aoi;
    auv.last_reception = delays[i];
    auv.delivered = snapshots[i];
    auv.delivered.staleness = clock_ - snapshots[i].capture_time;
    out.push_back(auv.delivered);
  }
  return out;
}

UnderwaterEnv::StepResult UnderwaterEnv::step(
    const std::vector<ActionTuple>& actions) {
  if (actions.size() != auvs_.size())
    throw std::invalid_argument("step: one action per AUV required");
  if (done_) throw std::logic_error("step: episode is done; call reset");

  const std::size_t n = auvs_.size();
  StepResult result;
  result.action_clamped.assign(n, false);

  std::vector<ActionTuple> acts(n);
  int max_z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ActionTuple a = actions[i];
    acts[i].speed = std::clamp(a.speed, 0.0, cfg_.v_max);
    acts[i].turn = std::clamp(a.turn, -cfg_.turn_max, cfg_.turn_max);
    acts[i].wait_steps = std::clamp(a.wait_steps, 0, cfg_.z_max);
    if (acts[i].speed != a.speed || acts[i].turn != a.turn ||
        acts[i].wait_steps != a.wait_steps)
      result.action_clamped[i] = true;
    max_z = std::max(max_z, acts[i].wait_steps);
  }

  const double t0 = clock_;
  std::vector<double> rate_bits(n, 0.0), move_energy(n, 0.0);
  std::vector<double> transmit_time(n, 0.0), delay_steps(n, 0.0);
  std::vector<Observation> snapshots(n);

  // Wait-and-act phase: sub-step k runs over [t0+k, t0+k+1); AUV i idles
  // while k < Z_i, acts at k == Z_i and transmits right after.
  for (int k = 0; k <= max_z; ++k) {
    clock_ = t0 + k + 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (k != acts[i].wait_steps) continue;
      AuvRuntime& auv = auvs_[i];
      auv.pose.heading =
          std::remainder(auv.pose.heading + acts[i].turn, 2.0 * M_PI);
      const double dist = acts[i].speed * cfg_.sample_period;
      auv.pose.x = std::clamp(auv.pose.x + dist * std::cos(auv.pose.heading),
                              0.0, cfg_.arena_width);
      auv.pose.y = std::clamp(auv.pose.y + dist * std::sin(auv.pose.heading),
                              0.0, cfg_.arena_height);
      move_energy[i] = cfg_.move_energy_per_m * dist;
      rate_bits[i] = transfer_data(auv);
      snapshots[i] = capture_snapshot(auv);
      transmit_time[i] = clock_;
      delay_steps[i] = draw_delay_steps(auv.pose);
    }
  }

  // Propagation phase: everyone idles until the slowest observation lands.
  double round_end = clock_;
  for (std::size_t i = 0; i < n; ++i)
    round_end = std::max(round_end, transmit_time[i] + delay_steps[i]);
  clock_ = round_end;
  const double round_len = round_end - t0;

  result.rewards.resize(n);
  result.observations.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    AuvRuntime& auv = auvs_[i];
    const double z_eff = transmit_time[i] - auv.last_reception;
    aoi::append_update(auv.timeline, delay_steps[i], z_eff);
    const double new_avg = aoi::time_averaged_aoi(auv.timeline).time_avg_aoi;
    const double aoi_inc = new_avg - auv.running_avg_aoi;
    auv.running_avg_aoi = new_avg;
    auv.last_reception = transmit_time[i] + delay_steps[i];

    const double energy =
        move_energy[i] + cfg_.comms_energy_per_step * round_len;
    auv.energy += energy;

    RewardTuple& r = result.rewards[i];
    r.rate_term = rate_bits[i];
    r.energy_term = energy;
    r.aoi_increment = aoi_inc;
    r.scalar = cfg_.w_rate * r.rate_term - cfg_.w_energy * r.energy_term -
               cfg_.w_aoi * r.aoi_increment;
    auv.reward_sum += r.scalar;

    auv.delivered = snapshots[i];
    auv.delivered.staleness = clock_ - transmit_time[i];
    result.observations[i] = auv.delivered;

    if (record_trace_) {
      TraceRow row;
      row.macro_step = macro_step_;
      row.auv = static_cast<int>(i);
      row.clock = clock_;
      row.pose = auv.pose;
      row.delay = delay_steps[i];
      row.wait = static_cast<double>(acts[i].wait_steps);
      row.rate = rate_bits[i];
      row.energy = energy;
      row.aoi_increment = aoi_inc;
      row.reward = r.scalar;
      trace_.push_back(row);
    }
  }

  ++macro_step_;
  done_ = clock_ >= cfg_.horizon_steps ||
          (initial_total_data_ > 0.0 && total_remaining_data() <= 0.0);
  result.done = done_;
  return result;
}

EpisodeStats UnderwaterEnv::stats() const {
  EpisodeStats s;
  double aoi_sum = 0.0;
  for (const AuvRuntime& auv : auvs_) {
    aoi_sum += auv.running_avg_aoi;
    s.energy_consumed += auv.energy;
    s.sum_info_rate += auv.collected;
    s.cumulative_reward += auv.reward_sum;
  }
  s.time_avg_aoi = auvs_.empty() ? 0.0 : aoi_sum / static_cast<double>(auvs_.size());
  s.sir_per_step = clock_ > 0.0 ? s.sum_info_rate / clock_ : 0.0;
  return s;
}

double UnderwaterEnv::total_remaining_data() const {
  double total = 0.0;
  for (const Node& node : nodes_) total += node.remaining;
  return total;
}

double UnderwaterEnv::total_collected_data() const {
  double total = 0.0;
  for (const AuvRuntime& auv : auvs_) total += auv.collected;
  return total;
}

const std::vector<Pose>& UnderwaterEnv::auv_poses() const {
  pose_cache_.clear();
  for (const AuvRuntime& auv : auvs_) pose_cache_.push_back(auv.pose);
  return pose_cache_;
}

std::vector<double> UnderwaterEnv::node_remaining() const {
  std::vector<double> out;
  for (const Node& node : nodes_) out.push_back(node.remaining);
  return out;
}

std::vector<std::pair<double, double>> UnderwaterEnv::node_positions() const {
  std::vector<std::pair<double, double>> out;
  for (const Node& node : nodes_) out.emplace_back(node.x, node.y);
  return out;
}

std::size_t EnvView::obs_dim() const {
  return mode_ == Formulation::AoiMdp ? 7 : 6;
}

std::vector<std::vector<double>> EnvView::reset(std::uint64_t seed) {
  const bool with_y = mode_ == Formulation::AoiMdp;
  std::vector<std::vector<double>> out;
  for (const Observation& obs : env_->reset(seed))
    out.push_back(obs.flatten(with_y));
  return out;
}

EnvView::StepResult EnvView::step(std::vector<ActionTuple> actions) {
  if (mode_ == Formulation::StandardMdp)
    for (ActionTuple& a : actions) a.wait_steps = 0;
  const auto raw = env_->step(actions);
  const bool with_y = mode_ == Formulation::AoiMdp;
  const WorldConfig& cfg = env_->config();
  StepResult out;
  out.done = raw.done;
  for (std::size_t i = 0; i < raw.observations.size(); ++i) {
    out.observations.push_back(raw.observations[i].flatten(with_y));
    const RewardTuple& r = raw.rewards[i];
    out.rewards.push_back(with_y ? r.scalar
                                 : cfg.w_rate * r.rate_term -
                                       cfg.w_energy * r.energy_term);
  }
  return out;
}

}  // namespace aoimdp::env

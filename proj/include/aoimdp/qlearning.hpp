#pragma once

#include <cstdint>
#include <vector>

#include "aoimdp/env.hpp"
#include "aoimdp/rng.hpp"

namespace aoimdp::rl {

// Uniform binning of the flattened observation
// [x, y, heading, total_remaining, nearest_dist, nearest_bearing, (Y)].
struct Discretizer {
  double arena_width = 60.0;
  double arena_height = 60.0;
  double data_total = 1.0;  // full node payload, for the remaining-data level
  int pos_bins = 8;
  int heading_bins = 8;
  int data_levels = 4;
  int y_bins = 4;
  double y_cap = 8.0;  // staleness above this shares the top bin
  bool include_y = true;

  std::size_t state_count() const;
  std::size_t index(const std::vector<double>& obs) const;
};

struct ActionSet {
  std::vector<env::ActionTuple> actions;

  static ActionSet build(const std::vector<double>& speeds,
                         const std::vector<double>& turns,
                         const std::vector<int>& waits);
  std::size_t size() const { return actions.size(); }
};

struct Transition {
  std::size_t state = 0;
  std::size_t action = 0;
  double reward = 0.0;
  std::size_t next_state = 0;
  bool terminal = false;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual env::ActionTuple act(const std::vector<double>& obs, bool explore,
                               Rng& rng) = 0;
  virtual void update(const Transition& t) = 0;
};

// Epsilon-greedy tabular Q-learning over the discretized state/action grid.
class QPolicy : public Policy {
 public:
  QPolicy(Discretizer disc, ActionSet actions, double alpha, double gamma);

  env::ActionTuple act(const std::vector<double>& obs, bool explore,
                       Rng& rng) override;
  void update(const Transition& t) override;

  std::size_t state_index(const std::vector<double>& obs) const {
    return disc_.index(obs);
  }
  std::size_t greedy_action(std::size_t state) const;
  std::size_t action_count() const { return actions_.size(); }
  const ActionSet& action_set() const { return actions_; }
  const Discretizer& discretizer() const { return disc_; }
  double q_value(std::size_t state, std::size_t action) const {
    return table_[state * actions_.size() + action];
  }
  void set_epsilon(double eps) { epsilon_ = eps; }
  double epsilon() const { return epsilon_; }
  std::size_t last_state() const { return last_state_; }
  std::size_t last_action() const { return last_action_; }

 private:
  Discretizer disc_;
  ActionSet actions_;
  std::vector<double> table_;
  double alpha_;
  double gamma_;
  double epsilon_ = 0.0;
  std::size_t last_state_ = 0;
  std::size_t last_action_ = 0;
};

struct TrainConfig {
  int episodes = 400;
  int eval_interval = 50;
  int eval_episodes = 3;
  double alpha = 0.2;
  double gamma = 0.95;
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_decay_frac = 0.6;  // fraction of episodes over which eps decays
  int max_macro_steps = 1000;   // per-episode safety cap

  double epsilon_at(int episode) const;
  void validate() const;
};

struct StatsAggregate {
  env::EpisodeStats mean;
  env::EpisodeStats stddev;
  std::vector<env::EpisodeStats> episodes;
};

StatsAggregate aggregate_stats(std::vector<env::EpisodeStats> episodes);

struct EvalPoint {
  int episode = 0;
  StatsAggregate stats;
};
using LearningCurve = std::vector<EvalPoint>;

// Runs one seeded episode with the given policy; updates the policy when
// learn is set. Returns the final EpisodeStats.
env::EpisodeStats run_episode(env::EnvView& view, Policy& policy,
                              std::uint64_t seed, bool learn, bool explore,
                              Rng& action_rng, int max_macro_steps);

LearningCurve train(env::EnvView& view, QPolicy& policy,
                    const TrainConfig& cfg, std::uint64_t seed);

StatsAggregate evaluate(env::EnvView& view, Policy& policy, int n_episodes,
                        std::uint64_t seed, int max_macro_steps = 1000);

}  // namespace aoimdp::rl

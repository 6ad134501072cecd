#include "aoimdp/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoimdp::rl {

namespace {

int bin_of(double value, double lo, double hi, int bins) {
  if (bins <= 1) return 0;
  const double frac = (value - lo) / (hi - lo);
  const int b = static_cast<int>(frac * bins);
  return std::clamp(b, 0, bins - 1);
}

env::EpisodeStats& accumulate(env::EpisodeStats& acc, const env::EpisodeStats& s,
                              double scale, bool squared) {
  auto add = [&](double& dst, double v) { dst += scale * (squared ? v * v : v); };
  add(acc.time_avg_aoi, s.time_avg_aoi);
  add(acc.energy_consumed, s.energy_consumed);
  add(acc.sum_info_rate, s.sum_info_rate);
  add(acc.sir_per_step, s.sir_per_step);
  add(acc.cumulative_reward, s.cumulative_reward);
  return acc;
}

}  // namespace

std::size_t Discretizer::state_count() const {
  return static_cast<std::size_t>(pos_bins) * pos_bins * heading_bins *
         data_levels * (include_y ? y_bins : 1);
}

std::size_t Discretizer::index(const std::vector<double>& obs) const {
  const std::size_t expected = include_y ? 7 : 6;
  if (obs.size() != expected)
    throw std::invalid_argument("discretizer: unexpected observation length");
  const int xb = bin_of(obs[0], 0.0, arena_width, pos_bins);
  const int yb = bin_of(obs[1], 0.0, arena_height, pos_bins);
  const int hb = bin_of(std::remainder(obs[2], 2.0 * M_PI) + M_PI, 0.0,
                        2.0 * M_PI, heading_bins);
  const int db = bin_of(obs[3], 0.0, std::max(data_total, 1e-12), data_levels);
  std::size_t idx = static_cast<std::size_t>(xb);
  idx = idx * pos_bins + yb;
  idx = idx * heading_bins + hb;
  idx = idx * data_levels + db;
  if (include_y) {
    const int sb = bin_of(obs[6], 0.0, y_cap, y_bins);
    idx = idx * y_bins + sb;
  }
  return idx;
}

ActionSet ActionSet::build(const std::vector<double>& speeds,
                           const std::vector<double>& turns,
                           const std::vector<int>& waits) {
  if (speeds.empty() || turns.empty() || waits.empty())
    throw std::invalid_argument("action set: empty level list");
  ActionSet set;
  for (double s : speeds)
    for (double t : turns)
      for (int z : waits) set.actions.push_back({s, t, z});
  return set;
}

QPolicy::QPolicy(Discretizer disc, ActionSet actions, double alpha, double gamma)
    : disc_(std::move(disc)),
      actions_(std::move(actions)),
      alpha_(alpha),
      gamma_(gamma) {
  if (alpha_ <= 0.0 || alpha_ > 1.0)
    throw std::invalid_argument("qpolicy: alpha must be in (0, 1]");
  if (gamma_ < 0.0 || gamma_ >= 1.0)
    throw std::invalid_argument("qpolicy: gamma must be in [0, 1)");
  table_.assign(disc_.state_count() * actions_.size(), 0.0);
}

std::size_t QPolicy::greedy_action(std::size_t state) const {
  const std::size_t base = state * actions_.size();
  std::size_t best = 0;
  for (std::size_t a = 1; a < actions_.size(); ++a)
    if (table_[base + a] > table_[base + best]) best = a;
  return best;
}

env::ActionTuple QPolicy::act(const std::vector<double>& obs, bool explore,
                              Rng& rng) {
  last_state_ = disc_.index(obs);
  if (explore && rng.uniform01() < epsilon_)
    last_action_ = rng.uniform_index(actions_.size());
  else
    last_action_ = greedy_action(last_state_);
  return actions_.actions[last_action_];
}

void QPolicy::update(const Transition& t) {
  double target = t.reward;
  if (!t.terminal) {
    const std::size_t base = t.next_state * actions_.size();
    double best = table_[base];
    for (std::size_t a = 1; a < actions_.size(); ++a)
      best = std::max(best, table_[base + a]);
    target += gamma_ * best;
  }
  double& q = table_[t.state * actions_.size() + t.action];
  q += alpha_ * (target - q);
}

double TrainConfig::epsilon_at(int episode) const {
  const double decay_span = std::max(1.0, eps_decay_frac * episodes);
  const double frac = std::min(1.0, episode / decay_span);
  return eps_start + (eps_end - eps_start) * frac;
}

void TrainConfig::validate() const {
  if (episodes < 1) throw std::invalid_argument("train: episodes must be >= 1");
  if (eval_interval < 1) throw std::invalid_argument("train: eval_interval must be >= 1");
  if (eval_episodes < 1) throw std::invalid_argument("train: eval_episodes must be >= 1");
  if (gamma < 0.0 || gamma >= 1.0) throw std::invalid_argument("train: gamma must be in [0, 1)");
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("train: alpha must be in (0, 1]");
}

env::EpisodeStats run_episode(env::EnvView& view, Policy& policy,
                              std::uint64_t seed, bool learn, bool explore,
                              Rng& action_rng, int max_macro_steps) {
  auto* q = dynamic_cast<QPolicy*>(&policy);
  auto obs = view.reset(seed);
  const std::size_t n = obs.size();
  bool done = false;
  for (int step = 0; step < max_macro_steps && !done; ++step) {
    std::vector<env::ActionTuple> actions(n);
    std::vector<std::size_t> states(n), chosen(n);
    for (std::size_t i = 0; i < n; ++i) {
      actions[i] = policy.act(obs[i], explore, action_rng);
      if (q) {
        states[i] = q->last_state();
        chosen[i] = q->last_action();
      }
      // The standard-MDP formulation must never emit a wait.
      if (view.mode() == env::Formulation::StandardMdp &&
          actions[i].wait_steps != 0)
        throw std::logic_error("standard-MDP policy emitted a nonzero wait");
    }
    auto out = view.step(actions);
    done = out.done;
    if (learn && q) {
      for (std::size_t i = 0; i < n; ++i) {
        Transition t;
        t.state = states[i];
        t.action = chosen[i];
        t.reward = out.rewards[i];
        t.next_state = q->state_index(out.observations[i]);
        t.terminal = done;
        policy.update(t);
      }
    }
    obs = std::move(out.observations);
  }
  return view.env().stats();
}

LearningCurve train(env::EnvView& view, QPolicy& policy, const TrainConfig& cfg,
                    std::uint64_t seed) {
  cfg.validate();
  if (policy.discretizer().include_y !=
      (view.mode() == env::Formulation::AoiMdp))
    throw std::invalid_argument("train: policy/view observation spaces disagree");
  LearningCurve curve;
  Rng action_rng(derive_seed(seed, 0xAC710B));
  for (int ep = 0; ep < cfg.episodes; ++ep) {
    policy.set_epsilon(cfg.epsilon_at(ep));
    run_episode(view, policy, derive_seed(seed, static_cast<std::uint64_t>(ep)),
                /*learn=*/true, /*explore=*/true, action_rng,
                cfg.max_macro_steps);
    if ((ep + 1) % cfg.eval_interval == 0 || ep + 1 == cfg.episodes) {
      EvalPoint point;
      point.episode = ep + 1;
      point.stats = evaluate(view, policy, cfg.eval_episodes,
                             derive_seed(seed, 0xE7A1000000ull + ep),
                             cfg.max_macro_steps);
      curve.push_back(std::move(point));
    }
  }
  return curve;
}

StatsAggregate aggregate_stats(std::vector<env::EpisodeStats> episodes) {
  if (episodes.empty())
    throw std::invalid_argument("aggregate_stats: no episodes");
  StatsAggregate agg;
  agg.episodes = std::move(episodes);
  const double inv = 1.0 / agg.episodes.size();
  env::EpisodeStats sq{};
  for (const auto& s : agg.episodes) {
    accumulate(agg.mean, s, inv, false);
    accumulate(sq, s, inv, true);
  }
  auto finish = [](double m, double s2) {
    return std::sqrt(std::max(0.0, s2 - m * m));
  };
  agg.stddev.time_avg_aoi = finish(agg.mean.time_avg_aoi, sq.time_avg_aoi);
  agg.stddev.energy_consumed = finish(agg.mean.energy_consumed, sq.energy_consumed);
  agg.stddev.sum_info_rate = finish(agg.mean.sum_info_rate, sq.sum_info_rate);
  agg.stddev.sir_per_step = finish(agg.mean.sir_per_step, sq.sir_per_step);
  agg.stddev.cumulative_reward = finish(agg.mean.cumulative_reward, sq.cumulative_reward);
  return agg;
}

StatsAggregate evaluate(env::EnvView& view, Policy& policy, int n_episodes,
                        std::uint64_t seed, int max_macro_steps) {
  if (n_episodes < 1) throw std::invalid_argument("evaluate: n_episodes must be >= 1");
  std::vector<env::EpisodeStats> episodes;
  Rng action_rng(derive_seed(seed, 0xEA));
  for (int i = 0; i < n_episodes; ++i) {
    episodes.push_back(run_episode(
        view, policy, derive_seed(seed, 1000003ull + i), /*learn=*/false,
        /*explore=*/false, action_rng, max_macro_steps));
  }
  return aggregate_stats(std::move(episodes));
}

}  // namespace aoimdp::rl

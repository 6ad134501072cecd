#include <doctest.h>

#include <array>
#include <cmath>

#include "aoimdp/qlearning.hpp"

using namespace aoimdp;

namespace {

rl::Discretizer tiny_disc(int pos_bins, bool include_y) {
  rl::Discretizer d;
  d.arena_width = 30.0;
  d.arena_height = 30.0;
  d.data_total = 200.0;
  d.pos_bins = pos_bins;
  d.heading_bins = 2;
  d.data_levels = 2;
  d.y_bins = 2;
  d.y_cap = 4.0;
  d.include_y = include_y;
  return d;
}

env::WorldConfig tiny_world() {
  env::WorldConfig cfg;
  cfg.arena_width = 30.0;
  cfg.arena_height = 30.0;
  cfg.n_nodes = 1;
  cfg.node_data_bits = 50.0;
  cfg.horizon_steps = 30;
  cfg.reference_x = 15.0;
  cfg.reference_y = 15.0;
  cfg.world_seed = 5;
  return cfg;
}

rl::ActionSet tiny_actions(bool with_wait) {
  return rl::ActionSet::build({0.0, 2.0}, {0.0, 1.0},
                              with_wait ? std::vector<int>{0, 1}
                                        : std::vector<int>{0});
}

}  // namespace

TEST_CASE("discretizer index is a bijection onto the state range") {
  auto d = tiny_disc(3, true);
  CHECK(d.state_count() == 3u * 3 * 2 * 2 * 2);
  std::vector<int> hits(d.state_count(), 0);
  for (double x : {1.0, 15.0, 29.0})
    for (double y : {1.0, 15.0, 29.0})
      for (double h : {-1.0, 1.0})
        for (double data : {10.0, 150.0})
          for (double stale : {1.0, 3.9}) {
            const std::size_t idx = d.index({x, y, h, data, 0.0, 0.0, stale});
            REQUIRE(idx < d.state_count());
            hits[idx]++;
          }
  int covered = 0;
  for (int h : hits) covered += h > 0 ? 1 : 0;
  CHECK(covered == static_cast<int>(d.state_count()));
  CHECK_THROWS_AS(d.index({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("alpha=1 gamma=0 makes Q the immediate reward") {
  rl::QPolicy q(tiny_disc(2, false), tiny_actions(false), 1.0, 0.0);
  q.update({3, 1, 2.5, 0, false});
  CHECK(q.q_value(3, 1) == 2.5);
  q.update({3, 1, -1.0, 0, false});
  CHECK(q.q_value(3, 1) == -1.0);
}

TEST_CASE("q-learning converges to Q* on a hand-built 2-state MDP") {
  // deterministic: next state = action, reward r[s][a]
  const double gamma = 0.9;
  const std::array<std::array<double, 2>, 2> r{{{1.0, 0.0}, {0.0, 2.0}}};
  // value iteration for Q*
  std::array<std::array<double, 2>, 2> qstar{{{0.0, 0.0}, {0.0, 0.0}}};
  for (int it = 0; it < 500; ++it) {
    auto prev = qstar;
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < 2; ++a)
        qstar[s][a] = r[s][a] + gamma * std::max(prev[a][0], prev[a][1]);
  }

  rl::QPolicy q(tiny_disc(2, false),
                rl::ActionSet::build({0.0, 2.0}, {0.0}, {0}), 0.5, gamma);
  REQUIRE(q.action_count() == 2);
  Rng rng(1);
  std::size_t s = 0;
  for (int it = 0; it < 4000; ++it) {
    const std::size_t a = rng.uniform_index(2);
    q.update({s, a, r[s][a], a, false});
    s = a;
  }
  for (int st = 0; st < 2; ++st)
    for (int a = 0; a < 2; ++a)
      CHECK(std::abs(q.q_value(st, a) - qstar[st][a]) < 1e-3);
}

TEST_CASE("training twice with the same seed gives identical curves") {
  auto world = tiny_world();
  rl::TrainConfig tc;
  tc.episodes = 20;
  tc.eval_interval = 10;
  tc.eval_episodes = 2;
  auto run = [&]() {
    env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, 3);
    env::EnvView view(e, env::Formulation::AoiMdp);
    rl::QPolicy policy(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
    return rl::train(view, policy, tc, 42);
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].episode == b[i].episode);
    CHECK(a[i].stats.mean.cumulative_reward == b[i].stats.mean.cumulative_reward);
    CHECK(a[i].stats.mean.time_avg_aoi == b[i].stats.mean.time_avg_aoi);
  }
}

TEST_CASE("changing only the seed changes the trajectories") {
  auto world = tiny_world();
  world.world_seed.reset();
  rl::TrainConfig tc;
  tc.episodes = 10;
  tc.eval_interval = 10;
  tc.eval_episodes = 2;
  auto run = [&](std::uint64_t seed) {
    env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, seed);
    env::EnvView view(e, env::Formulation::AoiMdp);
    rl::QPolicy policy(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
    return rl::train(view, policy, tc, seed);
  };
  CHECK(run(1).back().stats.mean.cumulative_reward !=
        run(2).back().stats.mean.cumulative_reward);
}

TEST_CASE("evaluation on an empty world reports zero info rate") {
  auto world = tiny_world();
  world.n_nodes = 0;
  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, 3);
  env::EnvView view(e, env::Formulation::AoiMdp);
  rl::QPolicy policy(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
  const auto agg = rl::evaluate(view, policy, 5, 9);
  CHECK(agg.mean.sum_info_rate == 0.0);
  CHECK(agg.stddev.sum_info_rate == 0.0);
}

TEST_CASE("single-episode evaluation has zero spread") {
  auto world = tiny_world();
  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, 3);
  env::EnvView view(e, env::Formulation::AoiMdp);
  rl::QPolicy policy(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
  const auto agg = rl::evaluate(view, policy, 1, 9);
  CHECK(agg.stddev.time_avg_aoi == 0.0);
  CHECK(agg.stddev.cumulative_reward == 0.0);
}

TEST_CASE("aggregate statistics match recomputation from the episode list") {
  auto world = tiny_world();
  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{2.0}}, 3);
  env::EnvView view(e, env::Formulation::AoiMdp);
  rl::QPolicy policy(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
  const auto agg = rl::evaluate(view, policy, 10, 4);
  double mean = 0.0;
  for (const auto& s : agg.episodes) mean += s.cumulative_reward;
  mean /= agg.episodes.size();
  double var = 0.0;
  for (const auto& s : agg.episodes)
    var += (s.cumulative_reward - mean) * (s.cumulative_reward - mean);
  var /= agg.episodes.size();
  CHECK(agg.mean.cumulative_reward == doctest::Approx(mean).epsilon(1e-12));
  CHECK(agg.stddev.cumulative_reward ==
        doctest::Approx(std::sqrt(var)).epsilon(1e-9));
}

TEST_CASE("standard-MDP training never sees Y and never waits") {
  auto world = tiny_world();
  env::UnderwaterEnv e(world, delay::DelayModel{delay::Constant{1.0}}, 3);
  auto view = env::make_standard_mdp_view(e);
  rl::QPolicy policy(tiny_disc(3, false), tiny_actions(false), 0.2, 0.9);
  rl::TrainConfig tc;
  tc.episodes = 5;
  tc.eval_interval = 5;
  tc.eval_episodes = 1;
  CHECK_NOTHROW(rl::train(view, policy, tc, 1));

  // mismatched spaces are rejected up front
  rl::QPolicy wrong(tiny_disc(3, true), tiny_actions(true), 0.2, 0.9);
  CHECK_THROWS_AS(rl::train(view, wrong, tc, 1), std::invalid_argument);
}

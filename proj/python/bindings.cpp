#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aoimdp/aoi.hpp"
#include "aoimdp/delay_model.hpp"
#include "aoimdp/env.hpp"
#include "aoimdp/estimation.hpp"
#include "aoimdp/qlearning.hpp"
#include "aoimdp/rng.hpp"

namespace py = pybind11;
using namespace aoimdp;

PYBIND11_MODULE(_aoimdp, m) {
  m.doc() = "AoI-MDP underwater data-collection laboratory";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("gaussian", py::overload_cast<>(&Rng::gaussian))
      .def("exponential", &Rng::exponential)
      .def("poisson", &Rng::poisson)
      .def("geometric", &Rng::geometric);

  // aoi
  py::class_<aoi::UpdateRecord>(m, "UpdateRecord")
      .def_readwrite("transmit_time", &aoi::UpdateRecord::transmit_time)
      .def_readwrite("delay", &aoi::UpdateRecord::delay)
      .def_readwrite("wait_after", &aoi::UpdateRecord::wait_after)
      .def("reception_time", &aoi::UpdateRecord::reception_time);
  py::class_<aoi::UpdateTimeline>(m, "UpdateTimeline")
      .def(py::init<>())
      .def_readwrite("initial_age", &aoi::UpdateTimeline::initial_age)
      .def_readwrite("updates", &aoi::UpdateTimeline::updates)
      .def("horizon", &aoi::UpdateTimeline::horizon)
      .def("validate", &aoi::UpdateTimeline::validate);
  py::class_<aoi::AoiSummary>(m, "AoiSummary")
      .def_readonly("time_avg_aoi", &aoi::AoiSummary::time_avg_aoi)
      .def_readonly("total_area", &aoi::AoiSummary::total_area)
      .def_readonly("horizon", &aoi::AoiSummary::horizon)
      .def_readonly("update_count", &aoi::AoiSummary::update_count);
  m.def("instantaneous_aoi", &aoi::instantaneous_aoi);
  m.def("time_averaged_aoi", &aoi::time_averaged_aoi, py::arg("timeline"),
        py::arg("paper_literal_formula") = false);
  m.def("integrate_sawtooth", &aoi::integrate_sawtooth);
  m.def("append_update", &aoi::append_update);

  // estimation
  py::class_<est::DiscreteSignal>(m, "DiscreteSignal")
      .def(py::init<>())
      .def(py::init([](std::vector<double> v) {
        est::DiscreteSignal s;
        s.samples = std::move(v);
        return s;
      }))
      .def_readwrite("samples", &est::DiscreteSignal::samples);
  m.def("pm1_sequence", &est::pm1_sequence);
  m.def("chirp_sequence", &est::chirp_sequence);
  py::class_<est::DelayEstConfig>(m, "DelayEstConfig")
      .def(py::init<>())
      .def_readwrite("known_sequence", &est::DelayEstConfig::known_sequence)
      .def_readwrite("record_length", &est::DelayEstConfig::record_length)
      .def_readwrite("noise_variance", &est::DelayEstConfig::noise_variance)
      .def("signal_energy", &est::DelayEstConfig::signal_energy)
      .def("max_delay", &est::DelayEstConfig::max_delay);
  m.def("synthesize_delayed_observation", &est::synthesize_delayed_observation);
  m.def("correlation_statistic", &est::correlation_statistic);
  py::class_<est::DelayEstimate>(m, "DelayEstimate")
      .def_readonly("delay", &est::DelayEstimate::delay)
      .def_readonly("statistic_curve", &est::DelayEstimate::statistic_curve);
  m.def("estimate_delay", &est::estimate_delay);
  py::class_<est::HeadingConfig>(m, "HeadingConfig")
      .def(py::init<>())
      .def_readwrite("amplitude", &est::HeadingConfig::amplitude)
      .def_readwrite("carrier_frequency", &est::HeadingConfig::carrier_frequency)
      .def_readwrite("sensor_spacing", &est::HeadingConfig::sensor_spacing)
      .def_readwrite("propagation_speed", &est::HeadingConfig::propagation_speed)
      .def_readwrite("phase", &est::HeadingConfig::phase)
      .def_readwrite("sample_count", &est::HeadingConfig::sample_count)
      .def_readwrite("noise_variance", &est::HeadingConfig::noise_variance)
      .def_readwrite("grid_resolution", &est::HeadingConfig::grid_resolution);
  m.def("synthesize_heading_signal", &est::synthesize_heading_signal);
  m.def("spatial_periodogram", &est::spatial_periodogram);
  py::class_<est::HeadingEstimate>(m, "HeadingEstimate")
      .def_readonly("heading", &est::HeadingEstimate::heading)
      .def_readonly("statistic_curve", &est::HeadingEstimate::statistic_curve);
  m.def("estimate_heading", &est::estimate_heading);

  // delay models
  py::class_<delay::DelayModel>(m, "DelayModel")
      .def("sample_delay", &delay::DelayModel::sample_delay, py::arg("rng"),
           py::arg("context") = py::none())
      .def("mean_delay", &delay::DelayModel::mean_delay)
      .def("name", &delay::DelayModel::name);
  m.def("make_sdm", &delay::make_sdm, py::arg("sample_period"),
        py::arg("propagation_speed"), py::arg("reference_distance"),
        py::arg("replica_length"), py::arg("record_length"),
        py::arg("noise_variance"), py::arg("replica_seed") = 7);
  m.def("make_exponential",
        [](double rate) { return delay::DelayModel{delay::Exponential{rate}}; });
  m.def("make_poisson",
        [](double mean) { return delay::DelayModel{delay::Poisson{mean}}; });
  m.def("make_geometric",
        [](double p) { return delay::DelayModel{delay::Geometric{p}}; });
  m.def("make_constant",
        [](double v) { return delay::DelayModel{delay::Constant{v}}; });

  // environment
  py::class_<env::WorldConfig>(m, "WorldConfig")
      .def(py::init<>())
      .def_readwrite("arena_width", &env::WorldConfig::arena_width)
      .def_readwrite("arena_height", &env::WorldConfig::arena_height)
      .def_readwrite("n_auvs", &env::WorldConfig::n_auvs)
      .def_readwrite("n_nodes", &env::WorldConfig::n_nodes)
      .def_readwrite("node_data_bits", &env::WorldConfig::node_data_bits)
      .def_readwrite("comm_range", &env::WorldConfig::comm_range)
      .def_readwrite("v_max", &env::WorldConfig::v_max)
      .def_readwrite("turn_max", &env::WorldConfig::turn_max)
      .def_readwrite("move_energy_per_m", &env::WorldConfig::move_energy_per_m)
      .def_readwrite("comms_energy_per_step", &env::WorldConfig::comms_energy_per_step)
      .def_readwrite("sample_period", &env::WorldConfig::sample_period)
      .def_readwrite("propagation_speed", &env::WorldConfig::propagation_speed)
      .def_readwrite("horizon_steps", &env::WorldConfig::horizon_steps)
      .def_readwrite("w_rate", &env::WorldConfig::w_rate)
      .def_readwrite("w_energy", &env::WorldConfig::w_energy)
      .def_readwrite("w_aoi", &env::WorldConfig::w_aoi)
      .def_readwrite("rate_max", &env::WorldConfig::rate_max)
      .def_readwrite("snr_k", &env::WorldConfig::snr_k)
      .def_readwrite("z_max", &env::WorldConfig::z_max)
      .def_readwrite("reference_x", &env::WorldConfig::reference_x)
      .def_readwrite("reference_y", &env::WorldConfig::reference_y)
      .def_readwrite("world_seed", &env::WorldConfig::world_seed);
  py::class_<env::ActionTuple>(m, "ActionTuple")
      .def(py::init<>())
      .def(py::init([](double speed, double turn, int wait) {
             return env::ActionTuple{speed, turn, wait};
           }),
           py::arg("speed"), py::arg("turn") = 0.0, py::arg("wait_steps") = 0)
      .def_readwrite("speed", &env::ActionTuple::speed)
      .def_readwrite("turn", &env::ActionTuple::turn)
      .def_readwrite("wait_steps", &env::ActionTuple::wait_steps);
  py::class_<env::RewardTuple>(m, "RewardTuple")
      .def_readonly("rate_term", &env::RewardTuple::rate_term)
      .def_readonly("energy_term", &env::RewardTuple::energy_term)
      .def_readonly("aoi_increment", &env::RewardTuple::aoi_increment)
      .def_readonly("scalar", &env::RewardTuple::scalar);
  py::class_<env::Pose>(m, "Pose")
      .def_readonly("x", &env::Pose::x)
      .def_readonly("y", &env::Pose::y)
      .def_readonly("heading", &env::Pose::heading);
  py::class_<env::Observation>(m, "Observation")
      .def_readonly("pose", &env::Observation::pose)
      .def_readonly("total_remaining", &env::Observation::total_remaining)
      .def_readonly("nearest_dist", &env::Observation::nearest_dist)
      .def_readonly("nearest_bearing", &env::Observation::nearest_bearing)
      .def_readonly("capture_time", &env::Observation::capture_time)
      .def_readonly("staleness", &env::Observation::staleness)
      .def("flatten", &env::Observation::flatten);
  py::class_<env::EpisodeStats>(m, "EpisodeStats")
      .def_readonly("time_avg_aoi", &env::EpisodeStats::time_avg_aoi)
      .def_readonly("energy_consumed", &env::EpisodeStats::energy_consumed)
      .def_readonly("sum_info_rate", &env::EpisodeStats::sum_info_rate)
      .def_readonly("sir_per_step", &env::EpisodeStats::sir_per_step)
      .def_readonly("cumulative_reward", &env::EpisodeStats::cumulative_reward);
  py::class_<env::UnderwaterEnv::StepResult>(m, "StepResult")
      .def_readonly("observations", &env::UnderwaterEnv::StepResult::observations)
      .def_readonly("rewards", &env::UnderwaterEnv::StepResult::rewards)
      .def_readonly("action_clamped", &env::UnderwaterEnv::StepResult::action_clamped)
      .def_readonly("done", &env::UnderwaterEnv::StepResult::done);
  py::class_<env::UnderwaterEnv>(m, "UnderwaterEnv")
      .def(py::init<env::WorldConfig, delay::DelayModel, std::uint64_t>(),
           py::arg("config"), py::arg("delay_model"), py::arg("seed"))
      .def("reset", &env::UnderwaterEnv::reset)
      .def("step", &env::UnderwaterEnv::step)
      .def("stats", &env::UnderwaterEnv::stats)
      .def("timeline", &env::UnderwaterEnv::timeline,
           py::return_value_policy::reference_internal)
      .def("clock", &env::UnderwaterEnv::clock)
      .def("done", &env::UnderwaterEnv::done)
      .def("total_remaining_data", &env::UnderwaterEnv::total_remaining_data)
      .def("total_collected_data", &env::UnderwaterEnv::total_collected_data)
      .def("node_remaining", &env::UnderwaterEnv::node_remaining);
  py::enum_<env::Formulation>(m, "Formulation")
      .value("AOI_MDP", env::Formulation::AoiMdp)
      .value("STANDARD_MDP", env::Formulation::StandardMdp);
  py::class_<env::EnvView::StepResult>(m, "ViewStepResult")
      .def_readonly("observations", &env::EnvView::StepResult::observations)
      .def_readonly("rewards", &env::EnvView::StepResult::rewards)
      .def_readonly("done", &env::EnvView::StepResult::done);
  py::class_<env::EnvView>(m, "EnvView")
      .def(py::init<env::UnderwaterEnv&, env::Formulation>(),
           py::keep_alive<1, 2>())
      .def("obs_dim", &env::EnvView::obs_dim)
      .def("reset", &env::EnvView::reset)
      .def("step", &env::EnvView::step);

  // rl
  py::class_<rl::Discretizer>(m, "Discretizer")
      .def(py::init<>())
      .def_readwrite("arena_width", &rl::Discretizer::arena_width)
      .def_readwrite("arena_height", &rl::Discretizer::arena_height)
      .def_readwrite("data_total", &rl::Discretizer::data_total)
      .def_readwrite("pos_bins", &rl::Discretizer::pos_bins)
      .def_readwrite("heading_bins", &rl::Discretizer::heading_bins)
      .def_readwrite("data_levels", &rl::Discretizer::data_levels)
      .def_readwrite("y_bins", &rl::Discretizer::y_bins)
      .def_readwrite("y_cap", &rl::Discretizer::y_cap)
      .def_readwrite("include_y", &rl::Discretizer::include_y)
      .def("state_count", &rl::Discretizer::state_count)
      .def("index", &rl::Discretizer::index);
  py::class_<rl::ActionSet>(m, "ActionSet")
      .def_static("build", &rl::ActionSet::build)
      .def_readonly("actions", &rl::ActionSet::actions);
  py::class_<rl::TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("episodes", &rl::TrainConfig::episodes)
      .def_readwrite("eval_interval", &rl::TrainConfig::eval_interval)
      .def_readwrite("eval_episodes", &rl::TrainConfig::eval_episodes)
      .def_readwrite("alpha", &rl::TrainConfig::alpha)
      .def_readwrite("gamma", &rl::TrainConfig::gamma)
      .def_readwrite("eps_start", &rl::TrainConfig::eps_start)
      .def_readwrite("eps_end", &rl::TrainConfig::eps_end)
      .def_readwrite("eps_decay_frac", &rl::TrainConfig::eps_decay_frac)
      .def_readwrite("max_macro_steps", &rl::TrainConfig::max_macro_steps);
  py::class_<rl::QPolicy>(m, "QPolicy")
      .def(py::init<rl::Discretizer, rl::ActionSet, double, double>(),
           py::arg("discretizer"), py::arg("actions"), py::arg("alpha"),
           py::arg("gamma"))
      .def("greedy_action", &rl::QPolicy::greedy_action)
      .def("q_value", &rl::QPolicy::q_value)
      .def("state_index", &rl::QPolicy::state_index);
  py::class_<rl::StatsAggregate>(m, "StatsAggregate")
      .def_readonly("mean", &rl::StatsAggregate::mean)
      .def_readonly("stddev", &rl::StatsAggregate::stddev)
      .def_readonly("episodes", &rl::StatsAggregate::episodes);
  py::class_<rl::EvalPoint>(m, "EvalPoint")
      .def_readonly("episode", &rl::EvalPoint::episode)
      .def_readonly("stats", &rl::EvalPoint::stats);
  m.def("train", &rl::train, py::arg("view"), py::arg("policy"),
        py::arg("config"), py::arg("seed"));
  m.def(
      "evaluate",
      [](env::EnvView& view, rl::QPolicy& policy, int n_episodes,
         std::uint64_t seed, int max_macro_steps) {
        return rl::evaluate(view, policy, n_episodes, seed, max_macro_steps);
      },
      py::arg("view"), py::arg("policy"), py::arg("n_episodes"),
      py::arg("seed"), py::arg("max_macro_steps") = 1000);
}

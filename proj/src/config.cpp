#include "aoimdp/config.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace aoimdp::cli {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config field '") + key + "': " + e.what());
  }
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object())
    throw std::runtime_error("config section '" + what + "' must be an object");
}

}  // namespace

delay::DelayModel DelayModelSpec::build(const env::WorldConfig& world) const {
  validate();
  if (type == "sdm") {
    // Context-free mean uses the reference point's distance to the arena
    // centroid; per-call context overrides it inside the environment.
    const double ref_dist =
        std::hypot(world.reference_x - world.arena_width / 2.0,
                   world.reference_y - world.arena_height / 2.0);
    auto m = delay::make_sdm(world.sample_period, world.propagation_speed,
                             ref_dist, replica_length, record_length,
                             noise_variance, replica_seed);
    return m;
  }
  if (type == "exponential") return {delay::Exponential{exponential_rate}};
  if (type == "poisson") return {delay::Poisson{poisson_mean}};
  if (type == "geometric") return {delay::Geometric{geometric_p}};
  if (type == "constant") return {delay::Constant{constant_value}};
  throw std::runtime_error("unknown delay model type: " + type);
}

void DelayModelSpec::validate() const {
  if (type != "sdm" && type != "exponential" && type != "poisson" &&
      type != "geometric" && type != "constant")
    throw std::runtime_error("delay_model.type must be one of sdm|exponential|poisson|geometric|constant");
  if (exponential_rate <= 0.0) throw std::runtime_error("delay_model.exponential_rate must be > 0");
  if (poisson_mean <= 0.0) throw std::runtime_error("delay_model.poisson_mean must be > 0");
  if (geometric_p <= 0.0 || geometric_p > 1.0)
    throw std::runtime_error("delay_model.geometric_p must be in (0, 1]");
  if (constant_value <= 0.0) throw std::runtime_error("delay_model.constant_value must be > 0");
  if (replica_length == 0 || record_length < replica_length)
    throw std::runtime_error("delay_model: need 0 < replica_length <= record_length");
  if (noise_variance < 0.0) throw std::runtime_error("delay_model.noise_variance must be >= 0");
}

rl::Discretizer RlSpaceConfig::discretizer(const env::WorldConfig& world,
                                           bool include_y) const {
  rl::Discretizer d;
  d.arena_width = world.arena_width;
  d.arena_height = world.arena_height;
  d.data_total = std::max(1e-12, world.node_data_bits * world.n_nodes);
  d.pos_bins = pos_bins;
  d.heading_bins = heading_bins;
  d.data_levels = data_levels;
  d.y_bins = y_bins;
  d.y_cap = y_cap;
  d.include_y = include_y;
  return d;
}

rl::ActionSet RlSpaceConfig::action_set(bool allow_wait) const {
  return rl::ActionSet::build(speeds, turns,
                              allow_wait ? waits : std::vector<int>{0});
}

void ExperimentConfig::validate() const {
  static const char* kinds[] = {"aoi-check", "estimator-bench", "train",
                                "compare", "ablate-delay"};
  bool ok = false;
  for (const char* k : kinds) ok = ok || experiment == k;
  if (!ok) throw std::runtime_error("unknown experiment kind: " + experiment);
  world.validate();
  delay_model.validate();
  train.validate();
  if (formulation != "aoi" && formulation != "standard")
    throw std::runtime_error("formulation must be 'aoi' or 'standard'");
  if (seeds.empty()) throw std::runtime_error("seeds must be non-empty");
  if (rl_space.pos_bins < 1 || rl_space.heading_bins < 1 ||
      rl_space.data_levels < 1 || rl_space.y_bins < 1)
    throw std::runtime_error("rl bin counts must be >= 1");
  if (rl_space.speeds.empty() || rl_space.turns.empty() || rl_space.waits.empty())
    throw std::runtime_error("rl action level lists must be non-empty");
  if (aoi_check.random_timelines < 1 || aoi_check.dt_ratio <= 0.0 ||
      aoi_check.tolerance <= 0.0 || aoi_check.max_updates < 1)
    throw std::runtime_error("aoi_check parameters out of range");
  if (estimation.trials < 1 || estimation.heading_sweep < 1 ||
      estimation.snr <= 0.0)
    throw std::runtime_error("estimation bench parameters out of range");
}

ExperimentConfig config_from_json(const json& root) {
  const json& j = root.contains("config") ? root.at("config") : root;
  require_object(j, "config");
  ExperimentConfig cfg;
  read(j, "experiment", cfg.experiment);
  read(j, "formulation", cfg.formulation);
  read(j, "seeds", cfg.seeds);
  read(j, "out_dir", cfg.out_dir);

  if (j.contains("world")) {
    const json& w = j.at("world");
    require_object(w, "world");
    env::WorldConfig& c = cfg.world;
    read(w, "arena_width", c.arena_width);
    read(w, "arena_height", c.arena_height);
    read(w, "n_auvs", c.n_auvs);
    read(w, "n_nodes", c.n_nodes);
    read(w, "node_data_bits", c.node_data_bits);
    read(w, "comm_range", c.comm_range);
    read(w, "v_max", c.v_max);
    read(w, "turn_max", c.turn_max);
    read(w, "move_energy_per_m", c.move_energy_per_m);
    read(w, "comms_energy_per_step", c.comms_energy_per_step);
    read(w, "sample_period", c.sample_period);
    read(w, "propagation_speed", c.propagation_speed);
    read(w, "horizon_steps", c.horizon_steps);
    read(w, "w_rate", c.w_rate);
    read(w, "w_energy", c.w_energy);
    read(w, "w_aoi", c.w_aoi);
    read(w, "rate_max", c.rate_max);
    read(w, "snr_k", c.snr_k);
    read(w, "z_max", c.z_max);
    read(w, "reference_x", c.reference_x);
    read(w, "reference_y", c.reference_y);
    if (w.contains("world_seed"))
      c.world_seed = w.at("world_seed").get<std::uint64_t>();
  }
  if (j.contains("delay_model")) {
    const json& d = j.at("delay_model");
    require_object(d, "delay_model");
    DelayModelSpec& c = cfg.delay_model;
    read(d, "type", c.type);
    read(d, "exponential_rate", c.exponential_rate);
    read(d, "poisson_mean", c.poisson_mean);
    read(d, "geometric_p", c.geometric_p);
    read(d, "constant_value", c.constant_value);
    read(d, "replica_length", c.replica_length);
    read(d, "record_length", c.record_length);
    read(d, "noise_variance", c.noise_variance);
    read(d, "replica_seed", c.replica_seed);
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    require_object(t, "train");
    rl::TrainConfig& c = cfg.train;
    read(t, "episodes", c.episodes);
    read(t, "eval_interval", c.eval_interval);
    read(t, "eval_episodes", c.eval_episodes);
    read(t, "alpha", c.alpha);
    read(t, "gamma", c.gamma);
    read(t, "eps_start", c.eps_start);
    read(t, "eps_end", c.eps_end);
    read(t, "eps_decay_frac", c.eps_decay_frac);
    read(t, "max_macro_steps", c.max_macro_steps);
  }
  if (j.contains("rl_space")) {
    const json& r = j.at("rl_space");
    require_object(r, "rl_space");
    RlSpaceConfig& c = cfg.rl_space;
    read(r, "pos_bins", c.pos_bins);
    read(r, "heading_bins", c.heading_bins);
    read(r, "data_levels", c.data_levels);
    read(r, "y_bins", c.y_bins);
    read(r, "y_cap", c.y_cap);
    read(r, "speeds", c.speeds);
    read(r, "turns", c.turns);
    read(r, "waits", c.waits);
  }
  if (j.contains("estimation")) {
    const json& e = j.at("estimation");
    require_object(e, "estimation");
    EstimationBenchConfig& c = cfg.estimation;
    read(e, "replica_length", c.replica_length);
    read(e, "record_length", c.record_length);
    read(e, "snr", c.snr);
    read(e, "trials", c.trials);
    read(e, "heading_samples", c.heading_samples);
    read(e, "frequency_product", c.frequency_product);
    read(e, "grid_resolution", c.grid_resolution);
    read(e, "heading_sweep", c.heading_sweep);
  }
  if (j.contains("aoi_check")) {
    const json& a = j.at("aoi_check");
    require_object(a, "aoi_check");
    AoiCheckConfig& c = cfg.aoi_check;
    read(a, "random_timelines", c.random_timelines);
    read(a, "dt_ratio", c.dt_ratio);
    read(a, "tolerance", c.tolerance);
    read(a, "max_updates", c.max_updates);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  json j;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    j = json::object();  // empty file: full defaults
  } else {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("config parse error in " + path + ": " + e.what());
    }
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json w{{"arena_width", cfg.world.arena_width},
         {"arena_height", cfg.world.arena_height},
         {"n_auvs", cfg.world.n_auvs},
         {"n_nodes", cfg.world.n_nodes},
         {"node_data_bits", cfg.world.node_data_bits},
         {"comm_range", cfg.world.comm_range},
         {"v_max", cfg.world.v_max},
         {"turn_max", cfg.world.turn_max},
         {"move_energy_per_m", cfg.world.move_energy_per_m},
         {"comms_energy_per_step", cfg.world.comms_energy_per_step},
         {"sample_period", cfg.world.sample_period},
         {"propagation_speed", cfg.world.propagation_speed},
         {"horizon_steps", cfg.world.horizon_steps},
         {"w_rate", cfg.world.w_rate},
         {"w_energy", cfg.world.w_energy},
         {"w_aoi", cfg.world.w_aoi},
         {"rate_max", cfg.world.rate_max},
         {"snr_k", cfg.world.snr_k},
         {"z_max", cfg.world.z_max},
         {"reference_x", cfg.world.reference_x},
         {"reference_y", cfg.world.reference_y}};
  if (cfg.world.world_seed) w["world_seed"] = *cfg.world.world_seed;

  return json{
      {"experiment", cfg.experiment},
      {"formulation", cfg.formulation},
      {"seeds", cfg.seeds},
      {"out_dir", cfg.out_dir},
      {"world", std::move(w)},
      {"delay_model",
       {{"type", cfg.delay_model.type},
        {"exponential_rate", cfg.delay_model.exponential_rate},
        {"poisson_mean", cfg.delay_model.poisson_mean},
        {"geometric_p", cfg.delay_model.geometric_p},
        {"constant_value", cfg.delay_model.constant_value},
        {"replica_length", cfg.delay_model.replica_length},
        {"record_length", cfg.delay_model.record_length},
        {"noise_variance", cfg.delay_model.noise_variance},
        {"replica_seed", cfg.delay_model.replica_seed}}},
      {"train",
       {{"episodes", cfg.train.episodes},
        {"eval_interval", cfg.train.eval_interval},
        {"eval_episodes", cfg.train.eval_episodes},
        {"alpha", cfg.train.alpha},
        {"gamma", cfg.train.gamma},
        {"eps_start", cfg.train.eps_start},
        {"eps_end", cfg.train.eps_end},
        {"eps_decay_frac", cfg.train.eps_decay_frac},
        {"max_macro_steps", cfg.train.max_macro_steps}}},
      {"rl_space",
       {{"pos_bins", cfg.rl_space.pos_bins},
        {"heading_bins", cfg.rl_space.heading_bins},
        {"data_levels", cfg.rl_space.data_levels},
        {"y_bins", cfg.rl_space.y_bins},
        {"y_cap", cfg.rl_space.y_cap},
        {"speeds", cfg.rl_space.speeds},
        {"turns", cfg.rl_space.turns},
        {"waits", cfg.rl_space.waits}}},
      {"estimation",
       {{"replica_length", cfg.estimation.replica_length},
        {"record_length", cfg.estimation.record_length},
        {"snr", cfg.estimation.snr},
        {"trials", cfg.estimation.trials},
        {"heading_samples", cfg.estimation.heading_samples},
        {"frequency_product", cfg.estimation.frequency_product},
        {"grid_resolution", cfg.estimation.grid_resolution},
        {"heading_sweep", cfg.estimation.heading_sweep}}},
      {"aoi_check",
       {{"random_timelines", cfg.aoi_check.random_timelines},
        {"dt_ratio", cfg.aoi_check.dt_ratio},
        {"tolerance", cfg.aoi_check.tolerance},
        {"max_updates", cfg.aoi_check.max_updates}}}};
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_manifest(const ExperimentConfig& cfg,
                    const std::vector<std::string>& outputs,
                    const std::string& path) {
  json m{{"config", config_to_json(cfg)},
         {"config_hash", config_hash(cfg)},
         {"seeds", cfg.seeds},
         {"outputs", outputs}};
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << m.dump(2) << '\n';
}

}  // namespace aoimdp::cli

#include "aoimdp/delay_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoimdp::delay {

namespace {

std::size_t distance_to_steps(const Sdm& sdm, double distance) {
  const double steps = distance / (sdm.propagation_speed * sdm.sample_period);
  const auto rounded = static_cast<long long>(std::llround(steps));
  const long long max_delay = static_cast<long long>(sdm.est_cfg.max_delay());
  return static_cast<std::size_t>(std::clamp<long long>(rounded, 0, max_delay));
}

}  // namespace

double DelayModel::sample_delay(Rng& rng, std::optional<double> context) const {
  validate();
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sdm>) {
          const double distance = context.value_or(m.reference_distance);
          const std::size_t true_steps = distance_to_steps(m, distance);
          const auto observed = est::synthesize_delayed_observation(
              m.est_cfg, true_steps, rng.next_u64());
          const auto est = est::estimate_delay(m.est_cfg, observed);
          return static_cast<double>(std::max<std::size_t>(est.delay, 1));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return rng.exponential(m.rate);
        } else if constexpr (std::is_same_v<T, Poisson>) {
          return static_cast<double>(std::max<std::uint64_t>(rng.poisson(m.mean), 1));
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return static_cast<double>(rng.geometric(m.success_p));
        } else {
          return m.value;
        }
      },
      model);
}

double DelayModel::mean_delay() const {
  validate();
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sdm>) {
          return static_cast<double>(distance_to_steps(m, m.reference_distance));
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / m.rate;
        } else if constexpr (std::is_same_v<T, Poisson>) {
          return m.mean;
        } else if constexpr (std::is_same_v<T, Geometric>) {
          return 1.0 / m.success_p;
        } else {
          return m.value;
        }
      },
      model);
}

void DelayModel::validate() const {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sdm>) {
          m.est_cfg.validate();
          if (m.sample_period <= 0.0 || m.propagation_speed <= 0.0)
            throw std::invalid_argument("sdm: sample_period and c must be > 0");
          if (m.reference_distance < 0.0)
            throw std::invalid_argument("sdm: reference_distance must be >= 0");
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (m.rate <= 0.0) throw std::invalid_argument("exponential: rate must be > 0");
        } else if constexpr (std::is_same_v<T, Poisson>) {
          if (m.mean <= 0.0) throw std::invalid_argument("poisson: mean must be > 0");
        } else if constexpr (std::is_same_v<T, Geometric>) {
          if (m.success_p <= 0.0 || m.success_p > 1.0)
            throw std::invalid_argument("geometric: p must be in (0, 1]");
        } else {
          if (m.value <= 0.0) throw std::invalid_argument("constant: value must be > 0");
        }
      },
      model);
}

std::string DelayModel::name() const {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Sdm>) return "sdm";
        else if constexpr (std::is_same_v<T, Exponential>) return "exponential";
        else if constexpr (std::is_same_v<T, Poisson>) return "poisson";
        else if constexpr (std::is_same_v<T, Geometric>) return "geometric";
        else return "constant";
      },
      model);
}

DelayModel make_sdm(double sample_period, double propagation_speed,
                    double reference_distance, std::size_t replica_length,
                    std::size_t record_length, double noise_variance,
                    std::uint64_t replica_seed) {
  Sdm sdm;
  sdm.est_cfg.known_sequence = est::pm1_sequence(replica_length, replica_seed);
  sdm.est_cfg.record_length = record_length;
  sdm.est_cfg.noise_variance = noise_variance;
  sdm.sample_period = sample_period;
  sdm.propagation_speed = propagation_speed;
  sdm.reference_distance = reference_distance;
  return DelayModel{sdm};
}

}  // namespace aoimdp::delay

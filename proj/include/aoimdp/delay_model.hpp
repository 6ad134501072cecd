#pragma once

#include <optional>
#include <string>
#include <variant>

#include "aoimdp/estimation.hpp"
#include "aoimdp/rng.hpp"

namespace aoimdp::delay {

// Signal-level delay: the delay experienced downstream is the output of
// the replica-correlation estimator run on a synthesized noisy record
// whose true delay comes from the propagation distance.
struct Sdm {
  est::DelayEstConfig est_cfg;
  double sample_period = 1.0;       // seconds per sample/step
  double propagation_speed = 1.0;   // meters/second
  double reference_distance = 0.0;  // used when no per-call context is given
};

struct Exponential {
  double rate = 1.0;  // mean 1/rate
};

struct Poisson {
  double mean = 1.0;
};

struct Geometric {
  double success_p = 0.5;  // support {1, 2, ...}, mean 1/p
};

struct Constant {
  double value = 1.0;
};

// Tagged variant over the compared delay models. All delays are expressed
// in environment steps (continuous for exponential, integer counts for the
// discrete models); draws of 0 from discrete models map to one step so
// every delay is strictly positive.
struct DelayModel {
  std::variant<Sdm, Exponential, Poisson, Geometric, Constant> model;

  // context: propagation distance in meters, consumed by the SDM variant.
  double sample_delay(Rng& rng, std::optional<double> context = {}) const;

  double mean_delay() const;  // analytic mean, ignoring the 0 -> 1 mapping

  void validate() const;
  std::string name() const;
};

DelayModel make_sdm(double sample_period, double propagation_speed,
                    double reference_distance, std::size_t replica_length,
                    std::size_t record_length, double noise_variance,
                    std::uint64_t replica_seed = 7);

}  // namespace aoimdp::delay

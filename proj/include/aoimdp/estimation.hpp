#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace aoimdp::est {

struct DiscreteSignal {
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double operator[](std::size_t i) const { return samples[i]; }

  void validate() const;  // non-empty, all finite
};

// Pseudorandom +/-1 replica of length m; the default known sequence.
DiscreteSignal pm1_sequence(std::size_t m, std::uint64_t seed);

// Unit-amplitude linear chirp sweeping 0 -> 0.5 cycles/sample over m samples.
DiscreteSignal chirp_sequence(std::size_t m);

// Parameters of the replica-correlation delay estimator: known transmit
// sequence S of length M, record length N and white-noise variance.
struct DelayEstConfig {
  DiscreteSignal known_sequence;
  std::size_t record_length = 0;
  double noise_variance = 0.0;

  std::size_t replica_length() const { return known_sequence.size(); }
  std::size_t max_delay() const { return record_length - replica_length(); }
  double signal_energy() const;

  void validate() const;
};

// X[n] = S[n - Y] + W[n], W iid N(0, sigma^2); S zero outside [0, M).
DiscreteSignal synthesize_delayed_observation(const DelayEstConfig& cfg,
                                              std::size_t true_delay,
                                              std::uint64_t seed);

// J[Y] = sum_{n=Y}^{Y+M-1} X[n] S[n-Y] for every Y in [0, N-M].
std::vector<std::pair<std::size_t, double>> correlation_statistic(
    const DelayEstConfig& cfg, const DiscreteSignal& observed);

struct DelayEstimate {
  std::size_t delay = 0;
  std::vector<std::pair<std::size_t, double>> statistic_curve;
};

// Argmax of J; ties broken toward the smallest candidate.
DelayEstimate estimate_delay(const DelayEstConfig& cfg,
                             const DiscreteSignal& observed);

// Parameters of the heading signal x[n] = A cos(2 pi f_s(beta) n + phi) + W[n]
// with spatial frequency f_s(beta) = F0 (d/c) cos(beta).
struct HeadingConfig {
  double amplitude = 1.0;
  double carrier_frequency = 0.0;   // F0, hertz
  double sensor_spacing = 0.0;      // d, meters
  double propagation_speed = 1.0;   // c, meters/second
  double phase = 0.0;               // phi, radians
  std::size_t sample_count = 0;     // M
  double noise_variance = 0.0;
  double grid_resolution = 1e-3;    // radians

  double frequency_product() const {  // F0 d / c
    return carrier_frequency * sensor_spacing / propagation_speed;
  }
  double spatial_frequency(double beta) const;

  void validate() const;  // requires F0 d / c <= 0.5 and a sane grid
};

DiscreteSignal synthesize_heading_signal(const HeadingConfig& cfg,
                                         double true_heading,
                                         std::uint64_t seed);

// I_s(beta) = (1/M) |sum_n x[n] exp(-j 2 pi f_s(beta) n)|^2 on the
// uniform beta grid over (0, pi/2).
std::vector<std::pair<double, double>> spatial_periodogram(
    const HeadingConfig& cfg, const DiscreteSignal& signal);

struct HeadingEstimate {
  double heading = 0.0;  // radians, in (0, pi/2)
  std::vector<std::pair<double, double>> statistic_curve;
};

// Grid argmax refined by one 3-point parabolic interpolation step.
// Throws on a flat (zero-signal) periodogram.
HeadingEstimate estimate_heading(const HeadingConfig& cfg,
                                 const DiscreteSignal& signal);

}  // namespace aoimdp::est

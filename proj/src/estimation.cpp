#include "aoimdp/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "aoimdp/rng.hpp"

namespace aoimdp::est {

void DiscreteSignal::validate() const {
  if (samples.empty()) throw std::invalid_argument("signal must be non-empty");
  for (double v : samples)
    if (!std::isfinite(v)) throw std::invalid_argument("signal samples must be finite");
}

DiscreteSignal pm1_sequence(std::size_t m, std::uint64_t seed) {
  if (m == 0) throw std::invalid_argument("pm1_sequence: m must be > 0");
  Rng rng(seed);
  DiscreteSignal s;
  s.samples.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    s.samples.push_back(rng.uniform01() < 0.5 ? -1.0 : 1.0);
  return s;
}

DiscreteSignal chirp_sequence(std::size_t m) {
  if (m == 0) throw std::invalid_argument("chirp_sequence: m must be > 0");
  DiscreteSignal s;
  s.samples.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double n = static_cast<double>(i);
    // instantaneous frequency ramps 0 -> 0.5 cycles/sample
    s.samples.push_back(std::cos(M_PI * 0.5 * n * n / static_cast<double>(m)));
  }
  return s;
}

double DelayEstConfig::signal_energy() const {
  double e = 0.0;
  for (double v : known_sequence.samples) e += v * v;
  return e;
}

void DelayEstConfig::validate() const {
  known_sequence.validate();
  if (record_length < known_sequence.size())
    throw std::invalid_argument("record_length must be >= replica length");
  if (noise_variance < 0.0)
    throw std::invalid_argument("noise_variance must be >= 0");
}

DiscreteSignal synthesize_delayed_observation(const DelayEstConfig& cfg,
                                              std::size_t true_delay,
                                              std::uint64_t seed) {
  cfg.validate();
  if (true_delay > cfg.max_delay())
    throw std::invalid_argument("true_delay outside [0, N - M]");
  Rng rng(seed);
  const double sigma = std::sqrt(cfg.noise_variance);
  DiscreteSignal x;
  x.samples.assign(cfg.record_length, 0.0);
  for (std::size_t n = 0; n < cfg.record_length; ++n) {
    double s = 0.0;
    if (n >= true_delay && n - true_delay < cfg.replica_length())
      s = cfg.known_sequence[n - true_delay];
    x.samples[n] = s + (sigma > 0.0 ? rng.gaussian(0.0, sigma) : 0.0);
  }
  return x;
}

std::vector<std::pair<std::size_t, double>> correlation_statistic(
    const DelayEstConfig& cfg, const DiscreteSignal& observed) {
  cfg.validate();
  if (observed.size() != cfg.record_length)
    throw std::invalid_argument("observed length must equal record_length");
  const std::size_t m = cfg.replica_length();
  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(cfg.max_delay() + 1);
  for (std::size_t y = 0; y <= cfg.max_delay(); ++y) {
    double j = 0.0;
    for (std::size_t k = 0; k < m; ++k)
      j += observed[y + k] * cfg.known_sequence[k];
    curve.emplace_back(y, j);
  }
  return curve;
}

DelayEstimate estimate_delay(const DelayEstConfig& cfg,
                             const DiscreteSignal& observed) {
  DelayEstimate out;
  out.statistic_curve = correlation_statistic(cfg, observed);
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (const auto& [y, j] : out.statistic_curve) {
    if (j > best_score) {  // strict: ties keep the smallest candidate
      best_score = j;
      best = y;
    }
  }
  out.delay = best;
  return out;
}

double HeadingConfig::spatial_frequency(double beta) const {
  return frequency_product() * std::cos(beta);
}

void HeadingConfig::validate() const {
  if (amplitude <= 0.0) throw std::invalid_argument("amplitude must be > 0");
  if (carrier_frequency <= 0.0 || sensor_spacing <= 0.0 || propagation_speed <= 0.0)
    throw std::invalid_argument("F0, d, c must be > 0");
  if (frequency_product() > 0.5)
    throw std::invalid_argument("F0*d/c must be <= 0.5 (spatial Nyquist)");
  if (sample_count == 0) throw std::invalid_argument("sample_count must be > 0");
  if (noise_variance < 0.0) throw std::invalid_argument("noise_variance must be >= 0");
  if (grid_resolution <= 0.0 || grid_resolution >= M_PI / 2.0)
    throw std::invalid_argument("grid_resolution must be in (0, pi/2)");
}

DiscreteSignal synthesize_heading_signal(const HeadingConfig& cfg,
                                         double true_heading,
                                         std::uint64_t seed) {
  cfg.validate();
  if (!(true_heading > 0.0 && true_heading < M_PI / 2.0))
    throw std::invalid_argument("heading must lie in (0, pi/2)");
  Rng rng(seed);
  const double fs = cfg.spatial_frequency(true_heading);
  const double sigma = std::sqrt(cfg.noise_variance);
  DiscreteSignal x;
  x.samples.reserve(cfg.sample_count);
  for (std::size_t n = 0; n < cfg.sample_count; ++n) {
    double v = cfg.amplitude *
               std::cos(2.0 * M_PI * fs * static_cast<double>(n) + cfg.phase);
    if (sigma > 0.0) v += rng.gaussian(0.0, sigma);
    x.samples.push_back(v);
  }
  return x;
}

std::vector<std::pair<double, double>> spatial_periodogram(
    const HeadingConfig& cfg, const DiscreteSignal& signal) {
  cfg.validate();
  if (signal.size() != cfg.sample_count)
    throw std::invalid_argument("signal length must equal sample_count");
  std::vector<std::pair<double, double>> curve;
  const double m = static_cast<double>(cfg.sample_count);
  for (double beta = cfg.grid_resolution; beta < M_PI / 2.0;
       beta += cfg.grid_resolution) {
    const double fs = cfg.spatial_frequency(beta);
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < cfg.sample_count; ++n) {
      const double ang = -2.0 * M_PI * fs * static_cast<double>(n);
      re += signal[n] * std::cos(ang);
      im += signal[n] * std::sin(ang);
    }
    curve.emplace_back(beta, (re * re + im * im) / m);
  }
  return curve;
}

HeadingEstimate estimate_heading(const HeadingConfig& cfg,
                                 const DiscreteSignal& signal) {
  HeadingEstimate out;
  out.statistic_curve = spatial_periodogram(cfg, signal);
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < out.statistic_curve.size(); ++i) {
    if (out.statistic_curve[i].second > best_score) {
      best_score = out.statistic_curve[i].second;
      best = i;
    }
  }
  if (best_score <= 0.0)
    throw std::runtime_error("estimate_heading: flat periodogram, no estimate");

  double beta_hat = out.statistic_curve[best].first;
  // 3-point parabolic refinement around the grid peak.
  if (best > 0 && best + 1 < out.statistic_curve.size()) {
    const double ym = out.statistic_curve[best - 1].second;
    const double y0 = out.statistic_curve[best].second;
    const double yp = out.statistic_curve[best + 1].second;
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) {
      double shift = 0.5 * (ym - yp) / denom;
      if (shift > 0.5) shift = 0.5;
      if (shift < -0.5) shift = -0.5;
      beta_hat += shift * cfg.grid_resolution;
    }
  }
  const double eps = 1e-12;
  if (beta_hat <= 0.0) beta_hat = eps;
  if (beta_hat >= M_PI / 2.0) beta_hat = M_PI / 2.0 - eps;
  out.heading = beta_hat;
  return out;
}

}  // namespace aoimdp::est

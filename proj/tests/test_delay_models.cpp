#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "aoimdp/delay_model.hpp"

using namespace aoimdp;

namespace {

// Wilson-Hilferty approximation of the chi-square 0.99 quantile.
double chi2_crit_99(int df) {
  const double z = 2.3263478740408408;
  const double a = 2.0 / (9.0 * df);
  const double t = 1.0 - a + z * std::sqrt(a);
  return df * t * t * t;
}

double chi2_statistic(const std::map<int, int>& counts, int n,
                      const std::vector<double>& pmf) {
  double chi2 = 0.0;
  double tail_p = 1.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) tail_p -= pmf[k];
  int tail_obs = n;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double expected = n * pmf[k];
    auto it = counts.find(static_cast<int>(k));
    const int obs = it == counts.end() ? 0 : it->second;
    tail_obs -= obs;
    if (expected > 5.0) chi2 += (obs - expected) * (obs - expected) / expected;
  }
  const double tail_expected = n * tail_p;
  if (tail_expected > 5.0)
    chi2 += (tail_obs - tail_expected) * (tail_obs - tail_expected) / tail_expected;
  return chi2;
}

}  // namespace

TEST_CASE("constant model always returns its value") {
  delay::DelayModel model{delay::Constant{3.0}};
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(model.sample_delay(rng) == 3.0);
  CHECK(model.mean_delay() == 3.0);
}

TEST_CASE("exponential sample mean obeys the law of large numbers") {
  delay::DelayModel model{delay::Exponential{1.0}};
  Rng rng(2);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += model.sample_delay(rng);
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(delay::DelayModel{delay::Exponential{2.0}}.mean_delay() == 0.5);
}

TEST_CASE("sdm with zero noise reproduces the quantized distance delay") {
  auto model = delay::make_sdm(1.0, 4.0, 20.0, 32, 160, 0.0);
  Rng rng(3);
  CHECK(model.sample_delay(rng, 20.0) == 5.0);   // 20 / 4 = 5 steps
  CHECK(model.sample_delay(rng, 34.0) == 9.0);   // llround(8.5) -> 9
  CHECK(model.sample_delay(rng, 2.0) == 1.0);    // round(0.5) -> 1, positivity floor also 1
  CHECK(model.mean_delay() == 5.0);
}

TEST_CASE("analytic means, with the zero-to-one mapping documented") {
  CHECK(delay::DelayModel{delay::Geometric{0.5}}.mean_delay() == 2.0);
  CHECK(delay::DelayModel{delay::Poisson{3.0}}.mean_delay() == 3.0);
  // Empirical mean of max(X, 1) is lambda + P(X = 0) by enumeration.
  delay::DelayModel model{delay::Poisson{3.0}};
  Rng rng(4);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += model.sample_delay(rng);
  CHECK(sum / n == doctest::Approx(3.0 + std::exp(-3.0)).epsilon(0.01));
}

TEST_CASE("every variant draws strictly positive delays") {
  Rng rng(5);
  std::vector<delay::DelayModel> cheap = {
      {delay::Exponential{0.5}},
      {delay::Poisson{0.3}},  // P(0) large, exercises the mapping
      {delay::Geometric{0.9}},
      {delay::Constant{1.0}},
  };
  for (const auto& model : cheap)
    for (int i = 0; i < 1000000; ++i) CHECK(model.sample_delay(rng) > 0.0);
  auto sdm = delay::make_sdm(1.0, 4.0, 1.0, 16, 64, 0.5);
  for (int i = 0; i < 2000; ++i)
    CHECK(sdm.sample_delay(rng, rng.uniform(0.0, 50.0)) > 0.0);
}

TEST_CASE("poisson and geometric draws pass a chi-square fit") {
  const int n = 100000;
  {
    delay::DelayModel model{delay::Poisson{3.0}};
    Rng rng(6);
    std::map<int, int> counts;
    for (int i = 0; i < n; ++i)
      counts[static_cast<int>(model.sample_delay(rng))]++;
    // pmf of max(Poisson(3), 1)
    std::vector<double> pmf(15, 0.0);
    double p = std::exp(-3.0);
    pmf[1] = p;  // zero mapped to one
    for (int k = 1; k < 15; ++k) {
      p *= 3.0 / k;
      pmf[k] += p;
    }
    const double chi2 = chi2_statistic(counts, n, pmf);
    CHECK(chi2 < chi2_crit_99(12));
  }
  {
    delay::DelayModel model{delay::Geometric{0.3}};
    Rng rng(7);
    std::map<int, int> counts;
    for (int i = 0; i < n; ++i)
      counts[static_cast<int>(model.sample_delay(rng))]++;
    std::vector<double> pmf(20, 0.0);
    for (int k = 1; k < 20; ++k) pmf[k] = 0.3 * std::pow(0.7, k - 1);
    const double chi2 = chi2_statistic(counts, n, pmf);
    CHECK(chi2 < chi2_crit_99(17));
  }
}

TEST_CASE("identical seeds give identical draw sequences") {
  for (const auto& model :
       {delay::DelayModel{delay::Exponential{1.3}},
        delay::DelayModel{delay::Poisson{2.0}},
        delay::make_sdm(1.0, 4.0, 10.0, 16, 64, 0.2)}) {
    Rng a(11), b(11);
    for (int i = 0; i < 50; ++i)
      CHECK(model.sample_delay(a, 12.0) == model.sample_delay(b, 12.0));
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(delay::DelayModel{delay::Exponential{0.0}}.validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(delay::DelayModel{delay::Geometric{1.5}}.validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(delay::DelayModel{delay::Constant{-1.0}}.validate(),
                  std::invalid_argument);
}

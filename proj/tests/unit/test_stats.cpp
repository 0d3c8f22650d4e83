#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbns/rng.hpp"
#include "fbns/stats.hpp"

using namespace fbns;

TEST_CASE("fit_slope recovers an exact line") {
  const std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
  const std::vector<double> y = {3.0, 1.0, -1.0, -3.0, -5.0};
  const auto fit = fit_slope(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fit.slope_stderr < 1e-12);
  CHECK(fit.n == 5);
}

TEST_CASE("fit_slope reports a sane standard error under noise") {
  const GaussianStream gs(11, 0);
  std::vector<double> x, y;
  for (int i = 0; i < 400; ++i) {
    x.push_back(0.01 * i);
    y.push_back(0.5 + 1.25 * x.back() + 0.05 * gs.normal(i));
  }
  const auto fit = fit_slope(x, y);
  CHECK(std::abs(fit.slope - 1.25) < 5.0 * fit.slope_stderr);
  CHECK(fit.slope_stderr > 0.0);
}

TEST_CASE("fit_slope rejects degenerate input") {
  const std::vector<double> x2 = {1.0, 2.0};
  const std::vector<double> y3 = {1.0, 2.0, 3.0};
  CHECK_THROWS_AS((void)fit_slope(x2, y3), std::invalid_argument);
  const std::vector<double> one = {1.0};
  CHECK_THROWS_AS((void)fit_slope(one, one), std::invalid_argument);
  const std::vector<double> flat = {2.0, 2.0, 2.0};
  const std::vector<double> y = {0.0, 1.0, 2.0};
  CHECK_THROWS_AS((void)fit_slope(flat, y), std::invalid_argument);
}

TEST_CASE("ks statistic is zero on identical samples and one on disjoint ones") {
  const std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  const auto same = ks_two_sample(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0).epsilon(1e-9));

  const std::vector<double> lo = {1.0, 2.0, 3.0};
  const std::vector<double> hi = {10.0, 11.0, 12.0};
  const auto split = ks_two_sample(lo, hi);
  CHECK(split.statistic == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("ks separates equal from shifted gaussian samples") {
  const GaussianStream g1(100, 0);
  const GaussianStream g2(200, 0);
  const std::size_t n = 4000;
  std::vector<double> a(n), b(n), c(n);
  g1.fill_normal(a.data(), n);
  g2.fill_normal(b.data(), n);
  for (std::size_t i = 0; i < n; ++i) c[i] = b[i] + 0.25;
  CHECK(ks_two_sample(a, b).p_value > 1e-4);
  CHECK(ks_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("mean_variance uses the unbiased estimator") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const auto mv = mean_variance(xs);
  CHECK(mv.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(mv.variance == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(mv.n == 4);
}

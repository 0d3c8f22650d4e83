#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbns/quadrature.hpp"

using namespace fbns;

TEST_CASE("polynomials up to the gauss degree are exact") {
  const auto r = integrate_gk([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.converged);

  const auto r9 = integrate_gk(
      [](double x) { return 10.0 * std::pow(x, 9); }, -1.0, 2.0);
  CHECK(r9.value == doctest::Approx(1024.0 - 1.0).epsilon(1e-13));
}

TEST_CASE("smooth integrands meet the relative tolerance") {
  const auto r = integrate_gk([](double x) { return std::sin(x); }, 0.0,
                              std::numbers::pi);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.converged);
  CHECK(r.evaluations >= 15);

  const auto e = integrate_gk([](double x) { return std::exp(x); }, 0.0, 3.0);
  CHECK(e.value == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("oscillatory cancellation needs the absolute tolerance") {
  const auto r = integrate_gk([](double x) { return std::sin(40.0 * x); },
                              0.0, 2.0 * std::numbers::pi, 1e-12, 1e-12);
  CHECK(std::abs(r.value) < 1e-10);
  CHECK(r.converged);
}

TEST_CASE("adaptive bisection resolves a sharp peak") {
  // int_{-1}^{1} 1/(x^2 + 1e-6) dx = 2 atan(1e3) / 1e-3.
  const double exact = 2.0 * std::atan(1e3) * 1e3;
  const auto r = integrate_gk(
      [](double x) { return 1.0 / (x * x + 1e-6); }, -1.0, 1.0, 1e-11);
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
  CHECK(r.evaluations > 100);
}

TEST_CASE("reversed endpoints flip the sign") {
  const auto fwd = integrate_gk([](double x) { return x; }, 0.0, 2.0);
  const auto rev = integrate_gk([](double x) { return x; }, 2.0, 0.0);
  CHECK(fwd.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(rev.value == doctest::Approx(-2.0).epsilon(1e-14));
}

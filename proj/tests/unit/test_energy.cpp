#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbns/energy.hpp"
#include "fbns/solver.hpp"

using namespace fbns;

namespace {

// Deterministic small 2D run; returns v = u - z alongside z and the grid.
struct Run {
  std::vector<SpectralField> v;
  std::vector<SpectralField> z;
  TimeGrid grid;
};

Run direct_run(double phi_scale, std::uint64_t seed, int n_steps) {
  SolveConfig cfg;
  cfg.k_max = 8;
  cfg.n_steps = n_steps;
  cfg.hurst = 0.9;
  cfg.q = 1.5;
  cfg.phi_scale = phi_scale;
  cfg.seed = seed;
  const auto sol = solve_direct(cfg);
  REQUIRE(!sol.blew_up);
  Run run;
  run.grid = sol.grid;
  run.z = sol.z;
  for (std::size_t n = 0; n < sol.u.size(); ++n) {
    SpectralField v = sol.u[n];
    v -= sol.z[n];
    run.v.push_back(std::move(v));
  }
  return run;
}

}  // namespace

TEST_CASE("without noise the energy decays monotonically under the envelope") {
  const auto run = direct_run(0.0, 1, 256);
  const auto ledger = energy_audit(run.v, run.z, run.grid, 2.0);
  REQUIRE(ledger.t.size() == run.v.size());
  CHECK(ledger.pass);
  CHECK(ledger.max_trilinear_defect < 1e-10);
  for (std::size_t n = 0; n + 1 < ledger.v_l2_sq.size(); ++n) {
    CHECK(ledger.v_l2_sq[n + 1] <= ledger.v_l2_sq[n] * (1.0 + 1e-12));
  }
  // z = 0 freezes the envelope at the initial energy.
  for (const double e : ledger.envelope) {
    CHECK(e == doctest::Approx(ledger.envelope.front()).epsilon(1e-12));
  }
  for (const double z4 : ledger.z_l4_fourth) CHECK(z4 == 0.0);
}

TEST_CASE("the envelope grows with the gronwall constant") {
  const auto run = direct_run(0.3, 99, 128);
  const auto small = energy_audit(run.v, run.z, run.grid, 2.0);
  const auto large = energy_audit(run.v, run.z, run.grid, 8.0);
  REQUIRE(small.envelope.size() == large.envelope.size());
  bool strictly_larger = false;
  for (std::size_t n = 0; n < small.envelope.size(); ++n) {
    CHECK(large.envelope[n] >= small.envelope[n]);
    strictly_larger = strictly_larger || large.envelope[n] > small.envelope[n];
  }
  CHECK(strictly_larger);
  CHECK(small.pass);
  CHECK(large.pass);
  CHECK(small.c_constant == 2.0);
}

TEST_CASE("the residual shrinks at first order in the step size") {
  const auto coarse = direct_run(0.3, 99, 128);
  const auto fine = direct_run(0.3, 99, 256);
  const auto lc = energy_audit(coarse.v, coarse.z, coarse.grid, 2.0);
  const auto lf = energy_audit(fine.v, fine.z, fine.grid, 2.0);
  auto rms = [](const std::vector<double>& r, double dt) {
    double s = 0.0;
    for (const double x : r) s += x * x * dt;
    return std::sqrt(s);
  };
  const double ratio = rms(lc.residual, coarse.grid.dt()) /
                       rms(lf.residual, fine.grid.dt());
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.6);
}

TEST_CASE("the audit is restricted to two dimensions") {
  const auto model = StokesModel::fourier(3, 2);
  const TimeGrid grid{0.1, 4};
  const std::vector<SpectralField> v(grid.points(), SpectralField(model));
  CHECK_THROWS_AS((void)energy_audit(v, v, grid, 2.0), std::invalid_argument);
}

TEST_CASE("the measured ladyzhenskaya ratio sits in the expected band") {
  const auto model = StokesModel::fourier(2, 8);
  const double l = calibrate_ladyzhenskaya(model);
  CHECK(l > 0.3);
  CHECK(l < 0.6);
  // More fields can only push the sup upward, and it stays bounded.
  const double l2 = calibrate_ladyzhenskaya(model, 200);
  CHECK(l2 >= l - 1e-15);
  CHECK(l2 < 0.6);
}

TEST_CASE("the gronwall constant respects its floor and quartic growth") {
  CHECK(gronwall_constant(0.45) == 2.0);
  CHECK(gronwall_constant(1.0) == doctest::Approx(13.5).epsilon(1e-14));
  CHECK(gronwall_constant(2.0) == doctest::Approx(13.5 * 16.0).epsilon(1e-14));
}

TEST_CASE("discrete interpolation inequalities hold on solver output") {
  const auto run = direct_run(0.3, 7, 128);
  const auto rep = interpolation_norms(run.v, run.grid, 4.0);
  CHECK(rep.r == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(rep.s == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rep.theta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rep.holds);
  CHECK(rep.lhs <= rep.rhs * (1.0 + 1e-12));

  // d = 3 exponents at p = 6 degenerate to equality of the two sides.
  SolveConfig cfg3;
  cfg3.dimension = 3;
  cfg3.k_max = 3;
  cfg3.n_steps = 32;
  cfg3.p_exponent = 6.0;
  cfg3.phi_scale = 0.1;
  cfg3.hurst = 0.9;
  cfg3.q = 2.5;
  const auto sol3 = solve_direct(cfg3);
  REQUIRE(!sol3.blew_up);
  std::vector<SpectralField> v3;
  for (std::size_t n = 0; n < sol3.u.size(); ++n) {
    SpectralField v = sol3.u[n];
    v -= sol3.z[n];
    v3.push_back(std::move(v));
  }
  const auto rep3 = interpolation_norms(v3, sol3.grid, 6.0);
  CHECK(rep3.r == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rep3.s == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep3.theta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep3.holds);
  CHECK(rep3.lhs == doctest::Approx(rep3.rhs).epsilon(1e-10));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "fbns/field.hpp"
#include "fbns/model.hpp"

using namespace fbns;

namespace {

constexpr double kPi = std::numbers::pi;

int find_rep(const StokesModel& model, const std::array<int, 3>& k) {
  for (int r = 0; r < model.n_reps(); ++r) {
    if (model.rep(r) == k) return r;
  }
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("fourier truncation enumerates one representative per conjugate pair") {
  const auto m2 = StokesModel::fourier(2, 16);
  // Half of the 33^2 - 1 nonzero lattice sites, one polarization, two phases.
  CHECK(m2->n_reps() == (33 * 33 - 1) / 2);
  CHECK(m2->modes_per_rep() == 2);
  CHECK(m2->n_modes() == 33 * 33 - 1);

  const auto m3 = StokesModel::fourier(3, 8);
  CHECK(m3->n_reps() == (17 * 17 * 17 - 1) / 2);
  CHECK(m3->modes_per_rep() == 4);
  CHECK(m3->n_modes() == 2 * (17 * 17 * 17 - 1));
}

TEST_CASE("eigenvalues equal the squared wavenumber") {
  const auto model = StokesModel::fourier(2, 4);
  for (int r = 0; r < model->n_reps(); ++r) {
    const auto& k = model->rep(r);
    const double k2 = static_cast<double>(k[0]) * k[0] +
                      static_cast<double>(k[1]) * k[1];
    for (int pol = 0; pol < 1; ++pol) {
      CHECK(model->eigenvalue(model->mode_index(r, pol, false)) == k2);
      CHECK(model->eigenvalue(model->mode_index(r, pol, true)) == k2);
    }
  }
}

TEST_CASE("diagonal surrogate eigenvalues grow like j^(2/d)") {
  const auto m2 = StokesModel::diagonal(2, 16);
  CHECK(m2->n_modes() == 16);
  CHECK(m2->eigenvalue(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m2->eigenvalue(6) == doctest::Approx(7.0).epsilon(1e-15));
  const auto m3 = StokesModel::diagonal(3, 8);
  CHECK(m3->eigenvalue(7) ==
        doctest::Approx(std::pow(8.0, 2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("the quartic norm of a single sine mode has a closed form") {
  // u = (sin x2, 0): ||u||_4^4 = int sin^4 x2 = (2 pi) (3 pi / 4).
  const auto model = StokesModel::fourier(2, 4);
  const RawMode mode{{0, 1, 0}, {std::complex<double>(0.0, -0.5), 0.0, 0.0}};
  const auto u = leray_project(model, std::span(&mode, 1));
  const double expected = std::pow(1.5 * kPi * kPi, 0.25);
  CHECK(u.lp_norm(4.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(u.l2_norm() == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
}

TEST_CASE("the quadratic norm agrees with parseval on random fields") {
  const auto model = StokesModel::fourier(2, 8);
  const auto u = make_random_field(model, 321, 0);
  CHECK(u.lp_norm(2.0) == doctest::Approx(u.l2_norm()).epsilon(1e-10));

  const auto m3 = StokesModel::fourier(3, 3);
  const auto w = make_random_field(m3, 321, 1);
  CHECK(w.lp_norm(2.0) == doctest::Approx(w.l2_norm()).epsilon(1e-10));
}

TEST_CASE("lp norms are ordered in p on the unit torus measure scale") {
  const auto model = StokesModel::fourier(2, 8);
  const auto u = make_random_field(model, 55, 0, 1.0);
  // Holder on the finite measure: ||u||_2 <= (2 pi)^{d(1/2 - 1/4)} ||u||_4.
  const double vol_factor = std::pow(2.0 * kPi, 2.0 * (0.5 - 0.25));
  CHECK(u.l2_norm() <= vol_factor * u.lp_norm(4.0) * (1.0 + 1e-12));
  CHECK(u.lp_norm(4.0) <= std::pow(2.0 * kPi, 2.0 * (0.25 - 1.0 / 6.0)) *
                              u.lp_norm(6.0) * (1.0 + 1e-12));
}

TEST_CASE("taylor-green has the expected norms and is steady under leray") {
  const auto model = StokesModel::fourier(2, 4);
  const auto u = make_taylor_green(model, 1.0);
  CHECK(u.l2_norm() == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-12));
  CHECK(u.lp_norm(4.0) ==
        doctest::Approx(std::pow(1.25 * kPi * kPi, 0.25)).epsilon(1e-12));
  // Both active modes sit on |k|^2 = 2.
  CHECK(u.grad_sq() == doctest::Approx(2.0 * u.l2_sq()).epsilon(1e-12));
}

TEST_CASE("semigroup and fractional powers act diagonally") {
  const auto model = StokesModel::fourier(2, 4);
  auto u = make_taylor_green(model, 1.0);
  const double before = u.l2_norm();
  u.apply_semigroup(1.0);
  // e^{-nu |k|^2 t} with |k|^2 = 2, nu = 1, t = 1.
  CHECK(u.l2_norm() / before ==
        doctest::Approx(0.13533528323661269189).epsilon(1e-14));

  auto w = make_taylor_green(model, 1.0);
  const double l2 = w.l2_sq();
  CHECK(w.sobolev_sq(1.0) == doctest::Approx(2.0 * l2).epsilon(1e-13));
  CHECK(w.sobolev_sq(0.5) == doctest::Approx(std::sqrt(2.0) * l2).epsilon(1e-13));
  w.fractional_power(0.5);
  CHECK(w.l2_sq() == doctest::Approx(2.0 * l2).epsilon(1e-13));
}

TEST_CASE("leray projection removes the compressible part and is idempotent") {
  const auto model = StokesModel::fourier(2, 4);
  const RawMode raw{{1, 1, 0}, {1.0, 0.0, 0.0}};
  const auto u = leray_project(model, std::span(&raw, 1));
  const auto amp = u.mode_amplitude(find_rep(*model, {1, 1, 0}));
  CHECK(amp[0].real() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(amp[1].real() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(std::abs(amp[0].imag()) < 1e-14);

  // Projecting the projected amplitude changes nothing.
  const RawMode again{{1, 1, 0}, {amp[0], amp[1], 0.0}};
  const auto v = leray_project(model, std::span(&again, 1));
  for (int i = 0; i < u.size(); ++i) {
    CHECK(v[i] == doctest::Approx(u[i]).epsilon(1e-13));
  }

  // A gradient field dies entirely.
  const RawMode grad{{2, 1, 0}, {2.0, 1.0, 0.0}};
  CHECK(leray_project(model, std::span(&grad, 1)).l2_norm() < 1e-14);
}

TEST_CASE("mode amplitudes round-trip through the coefficient layout") {
  const auto model = StokesModel::fourier(3, 2);
  const RawMode raw{{1, 0, 0},
                    {0.0, std::complex<double>(0.25, -0.5),
                     std::complex<double>(-1.0, 0.75)}};
  const auto u = leray_project(model, std::span(&raw, 1));
  const auto amp = u.mode_amplitude(find_rep(*model, {1, 0, 0}));
  CHECK(amp[0].real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(amp[1].real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(amp[1].imag() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(amp[2].real() == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(amp[2].imag() == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("random fields are deterministic and respect the decay profile") {
  const auto model = StokesModel::fourier(2, 8);
  const auto a = make_random_field(model, 7, 0);
  const auto b = make_random_field(model, 7, 0);
  const auto c = make_random_field(model, 7, 1);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < a.size(); ++i) {
    all_equal = all_equal && a[i] == b[i];
    any_diff = any_diff || a[i] != c[i];
  }
  CHECK(all_equal);
  CHECK(any_diff);

  const auto flat = make_random_field(model, 7, 0, 0.0);
  const auto smooth = make_random_field(model, 7, 0, 2.0);
  CHECK(smooth.sobolev_sq(1.0) / smooth.l2_sq() <
        flat.sobolev_sq(1.0) / flat.l2_sq());
}

TEST_CASE("inner product and gradient norms are consistent") {
  const auto model = StokesModel::fourier(2, 6);
  const auto u = make_random_field(model, 1, 0);
  const auto v = make_random_field(model, 1, 1);
  CHECK(inner_l2(u, u) == doctest::Approx(u.l2_sq()).epsilon(1e-14));
  SpectralField sum = u;
  sum += v;
  CHECK(sum.l2_sq() == doctest::Approx(u.l2_sq() + 2.0 * inner_l2(u, v) +
                                       v.l2_sq()).epsilon(1e-13));
  CHECK(u.grad_sq() == doctest::Approx(u.sobolev_sq(1.0)).epsilon(1e-13));
}

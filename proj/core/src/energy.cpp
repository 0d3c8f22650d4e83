#include "fbns/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbns {

EnergyLedger energy_audit(const std::vector<SpectralField>& v,
                          const std::vector<SpectralField>& z,
                          const TimeGrid& grid, double c_constant) {
  const auto n_points = static_cast<std::size_t>(grid.points());
  if (v.size() != n_points || z.size() != n_points) {
    throw std::invalid_argument("energy_audit: trajectory/grid mismatch");
  }
  const ModelPtr& model = v[0].model();
  if (model->dimension() != 2 || model->backend() != Backend::fourier) {
    throw std::invalid_argument(
        "energy_audit: the L^4 interpolation step is two-dimensional");
  }
  const int n_steps = grid.n_steps;
  const double dt = grid.dt();

  EnergyLedger ledger;
  ledger.c_constant = c_constant;
  for (int n = 0; n <= n_steps; ++n) {
    ledger.t.push_back(grid.time(n));
    ledger.v_l2_sq.push_back(v[n].l2_sq());
    ledger.grad_v_sq.push_back(v[n].grad_sq());
    ledger.z_l4_fourth.push_back(std::pow(z[n].lp_norm(4.0), 4.0));
  }

  ledger.envelope.push_back(ledger.v_l2_sq[0]);
  for (int n = 0; n < n_steps; ++n) {
    const double g = c_constant * ledger.z_l4_fourth[n] * dt;
    ledger.envelope.push_back((ledger.envelope[n] + g) * std::exp(g));
  }

  for (int n = 0; n < n_steps; ++n) {
    const SpectralField w = v[n] + z[n];
    const double production = inner_l2(bilinear(w, z[n]), v[n]);
    ledger.residual.push_back(
        (ledger.v_l2_sq[n + 1] - ledger.v_l2_sq[n]) / dt +
        2.0 * ledger.grad_v_sq[n] - 2.0 * production);
    ledger.max_trilinear_defect =
        std::max(ledger.max_trilinear_defect,
                 std::abs(inner_l2(bilinear(w, v[n]), v[n])));
  }

  ledger.pass = true;
  for (int n = 0; n <= n_steps; ++n) {
    if (ledger.v_l2_sq[n] > ledger.envelope[n] * (1.0 + 1e-12)) {
      ledger.pass = false;
      break;
    }
  }
  return ledger;
}

double calibrate_ladyzhenskaya(const ModelPtr& model, int n_fields,
                               std::uint64_t seed) {
  if (model->backend() != Backend::fourier) {
    throw std::invalid_argument("calibration needs the fourier backend");
  }
  const auto ratio = [](const SpectralField& w) {
    const double denom =
        std::sqrt(w.l2_norm()) * std::sqrt(std::sqrt(w.grad_sq()));
    return denom > 0.0 ? w.lp_norm(4.0) / denom : 0.0;
  };
  double sup = 0.0;
  // Low single modes are the near-extremizers; random spectra average the
  // quotient down and only widen the measured corpus.
  const int mpr = model->modes_per_rep();
  for (int r = 0; r < std::min(model->n_reps(), 8); ++r) {
    SpectralField w(model);
    w[r * mpr] = 1.0;
    sup = std::max(sup, ratio(w));
  }
  for (int i = 0; i < n_fields; ++i) {
    const SpectralField w = make_random_field(
        model, seed, static_cast<std::uint64_t>(i), i % 2 == 0 ? 0.0 : 2.0);
    sup = std::max(sup, ratio(w));
  }
  return sup;
}

double gronwall_constant(double ladyzhenskaya) {
  return std::max(13.5 * std::pow(ladyzhenskaya, 4.0), 2.0);
}

InterpolationReport interpolation_norms(const std::vector<SpectralField>& v,
                                        const TimeGrid& grid, double p) {
  if (v.size() != static_cast<std::size_t>(grid.points())) {
    throw std::invalid_argument(
        "interpolation_norms: trajectory/grid mismatch");
  }
  const int d = v[0].model()->dimension();
  if (d == 2) {
    if (p <= 2.0) throw std::invalid_argument("need p > 2 for d = 2");
  } else {
    if (p <= 2.0 || p > 6.0) {
      throw std::invalid_argument("need 2 < p <= 6 for d = 3");
    }
  }

  InterpolationReport rep;
  if (d == 2) {
    rep.r = 2.0 * p / (p - 2.0);
    rep.s = 1.0 - 2.0 / p;
  } else {
    rep.r = 4.0 * p / (3.0 * (p - 2.0));
    rep.s = 3.0 * (p - 2.0) / (2.0 * p);
  }
  rep.theta = 2.0 / rep.r;

  const double dt = grid.dt();
  double lr_sum = 0.0;
  double h1_sum = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    const double w =
        (n == 0 || n + 1 == v.size()) ? 0.5 * dt : dt;
    lr_sum += w * std::pow(v[n].sobolev_norm(rep.s), rep.r);
    h1_sum += w * v[n].grad_sq();
    rep.sup_l2 = std::max(rep.sup_l2, v[n].l2_norm());
  }
  rep.lhs = std::pow(lr_sum, 1.0 / rep.r);
  rep.l2_h1 = std::sqrt(h1_sum);
  rep.rhs = std::pow(rep.sup_l2, 1.0 - rep.theta) *
            std::pow(rep.l2_h1, rep.theta);
  rep.holds = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

}  // namespace fbns

#include "fbns/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fbns/field.hpp"

namespace fbns {

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> t(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    t[i] = std::exp(a + (b - a) * i / (n - 1));
  }
  return t;
}

}  // namespace

double measure_smoothing_constant(const ModelPtr& model, double alpha,
                                  double t_lo, double t_hi, int n_times,
                                  int n_fields, std::uint64_t seed) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const int m = model->n_modes();
  std::vector<SpectralField> corpus;
  corpus.reserve(n_fields);
  for (int i = 0; i < n_fields; ++i) {
    corpus.push_back(make_random_field(model, seed,
                                       static_cast<std::uint64_t>(i),
                                       i % 2 == 0 ? 0.0 : 1.0));
  }
  const double nu = model->nu();
  double sup = 0.0;
  for (const double t : log_spaced(t_lo, t_hi, n_times)) {
    // Single modes attain the per-time sup over all of L^2; random fields
    // can only average the per-mode quotients down.
    for (int j = 0; j < m; ++j) {
      const double lam = model->eigenvalue(j);
      sup = std::max(sup, std::pow(t * lam, alpha) * std::exp(-nu * lam * t));
    }
    for (const auto& u : corpus) {
      double num = 0.0;
      double den = 0.0;
      for (int j = 0; j < m; ++j) {
        const double lam = model->eigenvalue(j);
        const double c = u[j];
        num += std::pow(lam, 2.0 * alpha) * std::exp(-2.0 * nu * lam * t) *
               c * c;
        den += c * c;
      }
      sup = std::max(sup, std::pow(t, alpha) * std::sqrt(num / den));
    }
  }
  return sup;
}

double measure_lr_lp_constant(const ModelPtr& model, double r, double p,
                              double t_lo, double t_hi, int n_times,
                              int n_fields, std::uint64_t seed) {
  if (r > p || r < 2.0) {
    throw std::invalid_argument("measure_lr_lp_constant: need 2 <= r <= p");
  }
  const double d = model->dimension();
  const double exponent = 0.5 * d * (1.0 / r - 1.0 / p);
  double sup = 0.0;
  for (int i = 0; i < n_fields; ++i) {
    const SpectralField u = make_random_field(
        model, seed, static_cast<std::uint64_t>(i), i % 2 == 0 ? 0.0 : 1.0);
    const double r_norm = u.lp_norm(r);
    for (const double t : log_spaced(t_lo, t_hi, n_times)) {
      SpectralField su = u;
      su.apply_semigroup(t);
      sup = std::max(sup, std::pow(t, exponent) * su.lp_norm(p) / r_norm);
    }
  }
  return sup;
}

double calibrated_solver_constant(const ModelPtr& model, double p) {
  const double r = std::max(2.0, 0.5 * p);
  return std::max(1.0, measure_lr_lp_constant(model, r, p));
}

}  // namespace fbns

#include "fbns/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbns/rng.hpp"
#include "fbns/special.hpp"
#include "fbns/stats.hpp"

namespace fbns {

double NoiseOperator::multiplier(double lambda) const {
  return phi_scale * std::pow(lambda, -0.5 * q);
}

double NoiseOperator::hs_norm_sq(const StokesModel& model) const {
  double sum = 0.0;
  for (int j = 0; j < model.n_modes(); ++j) {
    const double m = multiplier(model.eigenvalue(j));
    sum += m * m;
  }
  return sum;
}

int ConvolutionTrajectory::n_modes() const { return model_->n_modes(); }

std::span<const double> ConvolutionTrajectory::at(int n) const {
  const int m = n_modes();
  return {data_.data() + static_cast<std::size_t>(n) * m,
          static_cast<std::size_t>(m)};
}

SpectralField ConvolutionTrajectory::field_at(int n) const {
  SpectralField f(model_);
  const auto z = at(n);
  std::copy(z.begin(), z.end(), f.coefs().begin());
  return f;
}

double ConvolutionTrajectory::sup_lp(double p) const {
  double sup = 0.0;
  for (int n = 0; n <= grid_.n_steps; ++n) {
    sup = std::max(sup, field_at(n).lp_norm(p));
  }
  return sup;
}

double ConvolutionTrajectory::sup_sobolev(double alpha) const {
  double sup = 0.0;
  for (int n = 0; n <= grid_.n_steps; ++n) {
    double s = 0.0;
    const auto z = at(n);
    for (int j = 0; j < n_modes(); ++j) {
      s += std::pow(model_->eigenvalue(j), alpha) * z[j] * z[j];
    }
    sup = std::max(sup, std::sqrt(s));
  }
  return sup;
}

namespace {

// Trapezoid weights for integral_{t_n}^{t_{n+1}} e^{-nu lambda (t_{n+1}-s)}
// beta(s) ds with beta piecewise linear: the integral is a * beta_n +
// b * beta_{n+1}.  order == 0 selects the closed form (exact for the
// piecewise-linear interpolant).
void kernel_weights(double nu_lambda, double dt, int order, double* a,
                    double* b) {
  if (order == 0) {
    const double x = nu_lambda * dt;
    *a = dt * (phi1(x) - psi(x));
    *b = dt * psi(x);
    return;
  }
  const double delta = dt / order;
  const double r = std::exp(-nu_lambda * delta);
  double factor = 1.0;  // e^{-nu lambda (dt - i delta)} at i = order
  double sa = 0.0;
  double sb = 0.0;
  for (int i = order; i >= 0; --i) {
    const double w = (i == 0 || i == order) ? 0.5 : 1.0;
    const double frac = static_cast<double>(i) / order;
    sa += w * factor * (1.0 - frac);
    sb += w * factor * frac;
    factor *= r;
  }
  *a = delta * sa;
  *b = delta * sb;
}

}  // namespace

ConvolutionTrajectory convolve(const CylindricalPath& noise,
                               const ModelPtr& model, const NoiseOperator& op,
                               int quadrature_order) {
  if (noise.n_modes() < model->n_modes()) {
    throw std::invalid_argument("convolve: noise has fewer modes than model");
  }
  if (quadrature_order < 0) {
    throw std::invalid_argument("convolve: quadrature_order must be >= 0");
  }
  const int m = model->n_modes();
  const int n_steps = noise.grid().n_steps;
  const double dt = noise.grid().dt();
  const double nu = model->nu();

  ConvolutionTrajectory traj;
  traj.model_ = model;
  traj.grid_ = noise.grid();
  traj.quadrature_order_ = quadrature_order;
  traj.hurst_ = noise.hurst();
  traj.seed_ = noise.seed();
  traj.data_.assign(static_cast<std::size_t>(n_steps + 1) * m, 0.0);

  std::vector<double> decay(m), w_new(m), w_old(m), phi(m);
  for (int j = 0; j < m; ++j) {
    const double nl = nu * model->eigenvalue(j);
    double a = 0.0;
    double b = 0.0;
    kernel_weights(nl, dt, quadrature_order, &a, &b);
    decay[j] = std::exp(-nl * dt);
    w_new[j] = 1.0 - nl * b;
    w_old[j] = decay[j] + nl * a;
    phi[j] = op.multiplier(model->eigenvalue(j));
  }

  for (int n = 0; n < n_steps; ++n) {
    const double* z_n = traj.data_.data() + static_cast<std::size_t>(n) * m;
    double* z_next = traj.data_.data() + static_cast<std::size_t>(n + 1) * m;
    for (int j = 0; j < m; ++j) {
      const auto beta = noise.mode(j);
      z_next[j] = decay[j] * z_n[j] +
                  phi[j] * (w_new[j] * beta[n + 1] - w_old[j] * beta[n]);
    }
  }
  return traj;
}

ConvolutionTrajectory convolve_exact_ou(const ModelPtr& model,
                                        const NoiseOperator& op,
                                        const TimeGrid& grid,
                                        std::uint64_t seed) {
  const int m = model->n_modes();
  const int n_steps = grid.n_steps;
  const double dt = grid.dt();
  const double nu = model->nu();

  ConvolutionTrajectory traj;
  traj.model_ = model;
  traj.grid_ = grid;
  traj.quadrature_order_ = 0;
  traj.hurst_ = 0.5;
  traj.seed_ = seed;
  traj.data_.assign(static_cast<std::size_t>(n_steps + 1) * m, 0.0);

  for (int j = 0; j < m; ++j) {
    const double nl = nu * model->eigenvalue(j);
    const double decay = std::exp(-nl * dt);
    const double phi = op.multiplier(model->eigenvalue(j));
    // Transition variance of the unit-noise Ornstein-Uhlenbeck step.
    const double step_sd = phi * std::sqrt(-std::expm1(-2.0 * nl * dt) / (2.0 * nl));
    GaussianStream stream(seed, static_cast<std::uint64_t>(j));
    double z = 0.0;
    for (int n = 0; n < n_steps; ++n) {
      z = decay * z + step_sd * stream.normal(static_cast<std::uint64_t>(n));
      traj.data_[static_cast<std::size_t>(n + 1) * m + j] = z;
    }
  }
  return traj;
}

RegularityProbe regularity_probe(const ConvolutionTrajectory& traj,
                                 double alpha, int j0, double threshold) {
  const int m = traj.n_modes();
  if (j0 < 1 || j0 > m) {
    throw std::invalid_argument("regularity_probe: j0 out of range");
  }
  RegularityProbe probe;
  probe.threshold = threshold;
  for (int j = j0; j <= m; j *= 2) {
    probe.truncations.push_back(j);
    if (j > m / 2) break;
  }
  const auto& model = *traj.model();
  std::vector<double> weight(m);
  for (int j = 0; j < m; ++j) {
    weight[j] = std::pow(model.eigenvalue(j), alpha);
  }

  const int n_cuts = static_cast<int>(probe.truncations.size());
  std::vector<double> sup_sq(n_cuts, 0.0);
  double sup_full = 0.0;
  for (int n = 0; n <= traj.grid().n_steps; ++n) {
    const auto z = traj.at(n);
    double acc = 0.0;
    int cut = 0;
    for (int j = 0; j < m; ++j) {
      acc += weight[j] * z[j] * z[j];
      while (cut < n_cuts && j + 1 == probe.truncations[cut]) {
        sup_sq[cut] = std::max(sup_sq[cut], acc);
        ++cut;
      }
    }
    sup_full = std::max(sup_full, acc);
  }
  probe.sup_norm = std::sqrt(sup_full);
  for (double s : sup_sq) probe.curve.push_back(std::sqrt(s));

  // Increments of the refinement curve; their geometric decay (or lack of it)
  // decides the verdict.
  std::vector<double> inc;
  for (std::size_t i = 0; i + 1 < probe.curve.size(); ++i) {
    inc.push_back(probe.curve[i + 1] - probe.curve[i]);
  }
  for (std::size_t i = 0; i + 1 < inc.size(); ++i) {
    probe.ratios.push_back(inc[i] > 0.0 ? inc[i + 1] / inc[i] : 0.0);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (inc[i] > 0.0) {
      xs.push_back(static_cast<double>(i));
      ys.push_back(std::log(inc[i]));
    }
  }
  if (xs.size() >= 2) {
    probe.fitted_ratio = std::exp(fit_slope(xs, ys).slope);
  } else {
    probe.fitted_ratio = 0.0;
  }
  probe.convergent = probe.fitted_ratio < threshold;
  probe.divergent_flag =
      probe.ratios.size() >= 3 &&
      std::all_of(probe.ratios.begin(), probe.ratios.end(),
                  [threshold](double r) { return r >= threshold; });
  return probe;
}

HolderProbe holder_probe(const ConvolutionTrajectory& traj, double alpha) {
  const int m = traj.n_modes();
  const int n_steps = traj.grid().n_steps;
  const auto& model = *traj.model();
  std::vector<double> weight(m);
  for (int j = 0; j < m; ++j) {
    weight[j] = std::pow(model.eigenvalue(j), alpha);
  }

  HolderProbe probe;
  std::vector<double> xs, ys;
  for (int lag = 1; lag <= n_steps / 8; lag *= 2) {
    double mean_sq = 0.0;
    int count = 0;
    for (int n = 0; n + lag <= n_steps; ++n) {
      const auto a = traj.at(n);
      const auto b = traj.at(n + lag);
      double s = 0.0;
      for (int j = 0; j < m; ++j) {
        const double d = b[j] - a[j];
        s += weight[j] * d * d;
      }
      mean_sq += s;
      ++count;
    }
    mean_sq /= count;
    if (mean_sq <= 0.0) {
      probe.degenerate = true;
      return probe;
    }
    xs.push_back(std::log(lag * traj.grid().dt()));
    ys.push_back(0.5 * std::log(mean_sq));
  }
  probe.n_scales = static_cast<int>(xs.size());
  if (probe.n_scales >= 2) {
    const auto fit = fit_slope(xs, ys);
    probe.exponent = fit.slope;
    probe.exponent_stderr = fit.slope_stderr;
  } else {
    probe.degenerate = true;
  }
  return probe;
}

}  // namespace fbns

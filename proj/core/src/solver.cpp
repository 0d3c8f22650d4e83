#include "fbns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbns/estimates.hpp"
#include "fbns/special.hpp"

namespace fbns {

void SolveConfig::validate() const {
  if (dimension != 2 && dimension != 3) {
    throw std::invalid_argument("dimension must be 2 or 3");
  }
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (nu <= 0.0) throw std::invalid_argument("nu must be > 0");
  if (phi_scale < 0.0) throw std::invalid_argument("phi_scale must be >= 0");
  if (hurst <= 0.0 || hurst >= 1.0) {
    throw std::invalid_argument("hurst must lie in (0, 1)");
  }
  if (p_exponent <= dimension) {
    throw std::invalid_argument("p_exponent must exceed dimension");
  }
  if (t_final <= 0.0) throw std::invalid_argument("t_final must be > 0");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (m_constant <= 0.0) throw std::invalid_argument("m_constant must be > 0");
  if (max_picard_iters < 1) {
    throw std::invalid_argument("max_picard_iters must be >= 1");
  }
  if (picard_tol <= 0.0) throw std::invalid_argument("picard_tol must be > 0");
  if (quadrature_order < 0) {
    throw std::invalid_argument("quadrature_order must be >= 0");
  }
  if (min_local_steps < 1) {
    throw std::invalid_argument("min_local_steps must be >= 1");
  }
  if (u0_kind != "zero" && u0_kind != "taylor_green" &&
      u0_kind != "perturbed_taylor_green" && u0_kind != "random") {
    throw std::invalid_argument("unknown u0_kind: " + u0_kind);
  }
  if (u0_target_lp < 0.0) {
    throw std::invalid_argument("u0_target_lp must be >= 0");
  }
}

double compute_k0(const SpectralField& u0, const ConvolutionTrajectory& z,
                  double p) {
  if (u0.model() != z.model()) {
    throw std::invalid_argument("compute_k0: model mismatch");
  }
  return std::max(u0.lp_norm(p), z.sup_lp(p));
}

double compute_tau(double p, int d, double m, double k0, double t_final) {
  if (p <= d) throw std::domain_error("compute_tau: requires p > d");
  if (m <= 0.0) throw std::domain_error("compute_tau: requires M > 0");
  if (k0 < 0.0) throw std::domain_error("compute_tau: requires K0 >= 0");
  if (k0 == 0.0) return t_final;
  const double base = (p - d) / (20.0 * p * m * k0);
  return std::min(t_final, std::pow(base, 2.0 * p / (p - d)));
}

double compute_c0(double p, int d, double m, double k0, double tau) {
  if (p <= d) throw std::domain_error("compute_c0: requires p > d");
  return (12.0 * p * m * k0 / (p - d)) * std::pow(tau, 0.5 - d / (2.0 * p));
}

SpectralField make_initial_field(const SolveConfig& config,
                                 const ModelPtr& model) {
  SpectralField u0(model);
  if (config.u0_kind == "taylor_green") {
    u0 = make_taylor_green(model, config.u0_amplitude);
  } else if (config.u0_kind == "perturbed_taylor_green") {
    u0 = make_perturbed_taylor_green(model, config.u0_amplitude,
                                     config.u0_perturbation);
  } else if (config.u0_kind == "random") {
    // Substream 2^63 keeps u0 draws disjoint from noise-path substreams.
    u0 = make_random_field(model, config.seed, std::uint64_t{1} << 63, 1.0);
    u0 *= config.u0_amplitude;
  }
  if (config.u0_target_lp > 0.0) {
    const double norm = u0.lp_norm(config.p_exponent);
    if (norm == 0.0) {
      throw std::invalid_argument("u0_target_lp set on a zero initial field");
    }
    u0 *= config.u0_target_lp / norm;
  }
  return u0;
}

std::vector<SpectralField> picard_step(const std::vector<SpectralField>& v_prev,
                                       const std::vector<SpectralField>& z,
                                       const SpectralField& u0,
                                       const TimeGrid& grid, bool exp_euler) {
  const auto n_points = static_cast<std::size_t>(grid.points());
  if (v_prev.size() != n_points || z.size() != n_points) {
    throw std::invalid_argument("picard_step: trajectory/grid mismatch");
  }
  const ModelPtr& model = u0.model();
  if (v_prev[0].model() != model || z[0].model() != model) {
    throw std::invalid_argument("picard_step: model mismatch");
  }
  const int n_steps = grid.n_steps;
  const double dt = grid.dt();
  const double nu = model->nu();
  const int m = model->n_modes();

  std::vector<double> decay(m), w_old(m), w_new(m);
  for (int j = 0; j < m; ++j) {
    const double x = nu * model->eigenvalue(j) * dt;
    decay[j] = std::exp(-x);
    if (exp_euler) {
      w_old[j] = dt * phi1(x);
      w_new[j] = 0.0;
    } else {
      w_old[j] = dt * (phi1(x) - psi(x));
      w_new[j] = dt * psi(x);
    }
  }

  std::vector<SpectralField> force;
  force.reserve(n_points);
  for (std::size_t n = 0; n < n_points; ++n) {
    force.push_back(bilinear(z[n] + v_prev[n], z[n] + v_prev[n]));
  }

  std::vector<SpectralField> v_next;
  v_next.reserve(grid.points());
  v_next.push_back(u0);
  for (int n = 0; n < n_steps; ++n) {
    SpectralField w(model);
    for (int j = 0; j < m; ++j) {
      w[j] = decay[j] * v_next[n][j] + w_old[j] * force[n][j] +
             w_new[j] * force[n + 1][j];
    }
    v_next.push_back(std::move(w));
  }
  return v_next;
}

namespace {

struct Setup {
  ModelPtr model;
  SpectralField u0;
  NoiseOperator op;
  ConvolutionTrajectory z_global;
};

Setup prepare(const SolveConfig& config) {
  config.validate();
  Setup s;
  s.model = StokesModel::fourier(config.dimension, config.k_max, config.nu);
  s.u0 = make_initial_field(config, s.model);
  s.op = NoiseOperator{config.q, config.phi_scale};
  const TimeGrid grid{config.t_final, config.n_steps};
  const auto path = CylindricalPath::sample(
      config.hurst, grid, s.model->n_modes(), config.seed, config.generator);
  s.z_global = convolve(path, s.model, s.op, config.quadrature_order);
  return s;
}

std::vector<SpectralField> trajectory_fields(const ConvolutionTrajectory& z) {
  std::vector<SpectralField> out;
  out.reserve(z.grid().points());
  for (int n = 0; n <= z.grid().n_steps; ++n) out.push_back(z.field_at(n));
  return out;
}

double sup_gap(const std::vector<SpectralField>& a,
               const std::vector<SpectralField>& b, double p) {
  double sup = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    sup = std::max(sup, (a[n] - b[n]).lp_norm(p));
  }
  return sup;
}

}  // namespace

LocalSolution solve_local(const SolveConfig& config, bool v0_zero) {
  Setup s = prepare(config);
  const double p = config.p_exponent;

  LocalSolution sol;
  sol.model = s.model;
  auto& diag = sol.diagnostics;
  diag.k0 = compute_k0(s.u0, s.z_global, p);
  diag.m_used = config.m_calibrated
                    ? calibrated_solver_constant(s.model, p)
                    : config.m_constant;
  diag.tau = compute_tau(p, config.dimension, diag.m_used, diag.k0,
                         config.t_final);
  diag.c0 = compute_c0(p, config.dimension, diag.m_used, diag.k0, diag.tau);
  diag.admissibility =
      check_admissibility(config.dimension, p, config.q, config.hurst);

  // Contraction horizon below t_final: refine the grid on [0, tau] instead
  // of solving on a horizon the fixed-point argument does not cover.
  std::vector<SpectralField> z;
  if (diag.tau >= config.t_final) {
    sol.grid = TimeGrid{config.t_final, config.n_steps};
    z = trajectory_fields(s.z_global);
  } else {
    const int scaled = static_cast<int>(
        std::ceil(config.n_steps * diag.tau / config.t_final));
    sol.grid = TimeGrid{diag.tau, std::max(config.min_local_steps, scaled)};
    const auto path =
        CylindricalPath::sample(config.hurst, sol.grid, s.model->n_modes(),
                                config.seed, config.generator);
    z = trajectory_fields(
        convolve(path, s.model, s.op, config.quadrature_order));
  }

  const SpectralField v0_field = v0_zero ? SpectralField(s.model) : s.u0;
  std::vector<SpectralField> v(sol.grid.points(), v0_field);
  double sup_v = 0.0;
  for (const auto& f : v) sup_v = std::max(sup_v, f.lp_norm(p));

  for (int iter = 0; iter < config.max_picard_iters; ++iter) {
    auto v_next = picard_step(v, z, s.u0, sol.grid, config.exp_euler_duhamel);
    const double gap = sup_gap(v_next, v, p);
    diag.iteration_gaps.push_back(gap);
    for (const auto& f : v_next) sup_v = std::max(sup_v, f.lp_norm(p));
    v = std::move(v_next);
    if (gap <= config.picard_tol) {
      diag.converged = true;
      break;
    }
  }
  diag.sup_v = sup_v;
  diag.uniform_bound_ok = sup_v <= 2.0 * diag.k0 * 1.05 || diag.k0 == 0.0;

  sol.v = std::move(v);
  sol.z = std::move(z);
  sol.u.reserve(sol.v.size());
  for (std::size_t n = 0; n < sol.v.size(); ++n) {
    sol.u.push_back(sol.v[n] + sol.z[n]);
  }
  return sol;
}

namespace {

DirectSolution direct_on_grid(const ModelPtr& model, const SpectralField& u0,
                              std::vector<SpectralField> z,
                              const TimeGrid& grid, double p, double k0) {
  DirectSolution sol;
  sol.model = model;
  sol.grid = grid;
  sol.k0 = k0;
  const int m = model->n_modes();
  const double dt = grid.dt();
  const double nu = model->nu();
  const double guard = 1e6 * std::max(k0, 1e-12);

  std::vector<double> decay(m), w_euler(m);
  for (int j = 0; j < m; ++j) {
    const double x = nu * model->eigenvalue(j) * dt;
    decay[j] = std::exp(-x);
    w_euler[j] = dt * phi1(x);
  }

  sol.u.reserve(grid.points());
  sol.u.push_back(u0);
  for (int n = 0; n < grid.n_steps; ++n) {
    const SpectralField force = bilinear(sol.u[n], sol.u[n]);
    SpectralField next(model);
    for (int j = 0; j < m; ++j) {
      next[j] = decay[j] * sol.u[n][j] + w_euler[j] * force[j] +
                (z[n + 1][j] - decay[j] * z[n][j]);
    }
    if (next.lp_norm(p) > guard) {
      sol.blew_up = true;
      sol.blow_step = n + 1;
      sol.u.push_back(std::move(next));
      break;
    }
    sol.u.push_back(std::move(next));
  }
  sol.z = std::move(z);
  return sol;
}

}  // namespace

DirectSolution solve_direct(const SolveConfig& config) {
  Setup s = prepare(config);
  const double p = config.p_exponent;
  const double k0 = compute_k0(s.u0, s.z_global, p);
  return direct_on_grid(s.model, s.u0, trajectory_fields(s.z_global),
                        TimeGrid{config.t_final, config.n_steps}, p, k0);
}

UniquenessResult uniqueness_probe(const SolveConfig& config) {
  const LocalSolution a = solve_local(config, false);
  const LocalSolution b = solve_local(config, true);
  UniquenessResult r;
  r.from_u0 = a.diagnostics;
  r.from_zero = b.diagnostics;
  if (a.grid.n_steps != b.grid.n_steps ||
      a.grid.t_final != b.grid.t_final) {
    throw std::logic_error("uniqueness_probe: local grids diverged");
  }
  r.deviation = sup_gap(a.u, b.u, config.p_exponent);
  return r;
}

CrossValidation cross_validate(const SolveConfig& config, int doublings) {
  config.validate();
  if (doublings < 1) {
    throw std::invalid_argument("cross_validate: doublings must be >= 1");
  }
  const ModelPtr model =
      StokesModel::fourier(config.dimension, config.k_max, config.nu);
  const SpectralField u0 = make_initial_field(config, model);
  const NoiseOperator op{config.q, config.phi_scale};
  const double p = config.p_exponent;

  const TimeGrid finest{config.t_final, config.n_steps << doublings};
  const auto path_finest = CylindricalPath::sample(
      config.hurst, finest, model->n_modes(), config.seed, config.generator);

  CrossValidation cv;
  cv.horizon = config.t_final;
  for (int lev = 0; lev <= doublings; ++lev) {
    const int stride = 1 << (doublings - lev);
    const auto path = path_finest.decimate(stride);
    const auto z_traj = convolve(path, model, op, config.quadrature_order);
    auto z = trajectory_fields(z_traj);
    const double k0 = compute_k0(u0, z_traj, p);
    cv.step_counts.push_back(path.grid().n_steps);
    cv.tau_values.push_back(
        compute_tau(p, config.dimension, config.m_constant, k0,
                    config.t_final));

    std::vector<SpectralField> v(path.grid().points(), u0);
    for (int iter = 0; iter < config.max_picard_iters; ++iter) {
      auto v_next =
          picard_step(v, z, u0, path.grid(), config.exp_euler_duhamel);
      const double gap = sup_gap(v_next, v, p);
      v = std::move(v_next);
      if (gap <= config.picard_tol) break;
    }
    const SpectralField u_picard = v.back() + z.back();

    const auto direct =
        direct_on_grid(model, u0, std::move(z), path.grid(), p, k0);
    cv.differences.push_back((u_picard - direct.u.back()).lp_norm(p));
  }
  for (std::size_t i = 0; i + 1 < cv.differences.size(); ++i) {
    cv.factors.push_back(cv.differences[i] / cv.differences[i + 1]);
  }
  return cv;
}

}  // namespace fbns

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbns/convolution.hpp"
#include "fbns/fbm.hpp"
#include "fbns/field.hpp"
#include "fbns/grid.hpp"
#include "fbns/model.hpp"
#include "fbns/series.hpp"

namespace fbns {

struct SolveConfig {
  int dimension = 2;
  int k_max = 16;
  double nu = 1.0;
  double q = 1.5;          // noise operator exponent (phi_j = lambda^{-q/2})
  double phi_scale = 1.0;  // overall noise amplitude
  double hurst = 0.75;
  double p_exponent = 4.0;  // must exceed dimension
  double t_final = 1.0;
  int n_steps = 256;
  std::uint64_t seed = 1;
  double m_constant = 1.0;  // semigroup constant entering tau
  bool m_calibrated = false;  // replace m_constant by the measured one
  int max_picard_iters = 40;
  double picard_tol = 1e-10;
  int quadrature_order = 8;  // convolution kernel quadrature panels
  // One-point (exponential-Euler) Duhamel weight instead of the two-point
  // exponential-trapezoid default.
  bool exp_euler_duhamel = false;
  int min_local_steps = 64;  // grid floor on [0, tau] when tau << t_final
  std::string u0_kind = "perturbed_taylor_green";
  double u0_amplitude = 1.0;
  double u0_perturbation = 0.25;
  // If positive, rescale u0 so its L^{p_exponent} norm equals this value.
  double u0_target_lp = 0.0;
  FbmGenerator generator = FbmGenerator::circulant;

  void validate() const;  // throws std::invalid_argument
};

struct SolveDiagnostics {
  double k0 = 0.0;
  double tau = 0.0;
  double c0 = 0.0;
  double m_used = 1.0;
  std::vector<double> iteration_gaps;  // sup-grid L^p gap per Picard pass
  bool converged = false;
  double sup_v = 0.0;  // sup over iterations and grid points of ||v^j||_p
  bool uniform_bound_ok = true;  // sup_v <= 2 K0 (1 + 0.05)
  AdmissibilityReport admissibility;
};

struct LocalSolution {
  ModelPtr model;
  TimeGrid grid;  // covers [0, min(tau, t_final)]
  std::vector<SpectralField> u;
  std::vector<SpectralField> v;
  std::vector<SpectralField> z;
  SolveDiagnostics diagnostics;
};

struct DirectSolution {
  ModelPtr model;
  TimeGrid grid;
  std::vector<SpectralField> u;
  std::vector<SpectralField> z;
  double k0 = 0.0;
  bool blew_up = false;
  int blow_step = -1;
};

struct CrossValidation {
  double horizon = 0.0;             // comparison time (end of the grid)
  std::vector<int> step_counts;     // n, 2n, 4n, ...
  std::vector<double> tau_values;   // per-level contraction horizon
  std::vector<double> differences;  // ||u_picard - u_direct||_p at horizon
  std::vector<double> factors;      // differences[i] / differences[i+1]
};

struct UniquenessResult {
  double deviation = 0.0;  // sup-grid L^p distance of the two solutions
  SolveDiagnostics from_u0;
  SolveDiagnostics from_zero;
};

// K0 = max(||u0||_p, sup over grid points of ||z(t)||_p).
double compute_k0(const SpectralField& u0, const ConvolutionTrajectory& z,
                  double p);

// tau = min{T, ((p-d)/(20 p M K0))^{2p/(p-d)}}; K0 = 0 returns T.
double compute_tau(double p, int d, double m, double k0, double t_final);

// C0 = (12 p M K0 / (p-d)) tau^{1/2 - d/(2p)}; the contraction factor bound.
double compute_c0(double p, int d, double m, double k0, double tau);

// Initial field selected by config.u0_kind ("zero", "taylor_green",
// "perturbed_taylor_green", "random"), scaled per config.
SpectralField make_initial_field(const SolveConfig& config,
                                 const ModelPtr& model);

// One Picard pass: w(t_0) = u0 and per mode
//   w(t_{m+1}) = e^{-nu lambda dt} w(t_m) + Q_m,
// where Q_m is the exponential-quadrature approximation of the Duhamel
// integral of F(s) = B(z(s) + v_prev(s)) over [t_m, t_{m+1}]:
//   exp_euler:  Q_m = dt phi1(x) F(t_m)
//   trapezoid:  Q_m = dt [(phi1(x) - psi(x)) F(t_m) + psi(x) F(t_{m+1})]
// with x = nu lambda dt.
std::vector<SpectralField> picard_step(const std::vector<SpectralField>& v_prev,
                                       const std::vector<SpectralField>& z,
                                       const SpectralField& u0,
                                       const TimeGrid& grid,
                                       bool exp_euler = false);

// Picard iteration for the mild solution on [0, min(tau, t_final)]:
// v^0 = u0 (constant in time; zero when v0_zero), iterate picard_step until
// the sup-grid L^p gap falls below picard_tol, return u = v + z.  When tau
// is below t_final the grid is refined to at least min_local_steps steps.
LocalSolution solve_local(const SolveConfig& config, bool v0_zero = false);

// Single-pass exponential-Euler integrator on u itself over [0, t_final]:
//   u(t_{n+1}) = S(dt)u(t_n) + dt phi1 B(u(t_n)) + (z(t_{n+1}) - S(dt)z(t_n)).
// Halts with blow-up status if ||u||_p exceeds 1e6 max(K0, 1e-12).
DirectSolution solve_direct(const SolveConfig& config);

// Same seed, two Picard initializations (v0 = u0 vs v0 = 0); the returned
// deviation is the sup-grid L^p distance of the two u trajectories.
UniquenessResult uniqueness_probe(const SolveConfig& config);

// Scheme self-convergence at fixed noise: one fBm realization sampled on the
// finest grid and decimated to each coarser level; per level both schemes
// run on [0, t_final] and their L^p difference at t_final is recorded.
CrossValidation cross_validate(const SolveConfig& config, int doublings);

}  // namespace fbns

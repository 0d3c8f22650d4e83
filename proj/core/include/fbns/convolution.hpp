#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fbns/fbm.hpp"
#include "fbns/field.hpp"
#include "fbns/grid.hpp"
#include "fbns/model.hpp"

namespace fbns {

// Diagonal noise operator: mode with eigenvalue lambda is scaled by
// phi_scale * lambda^{-q/2}.  Larger q means spatially smoother noise.
struct NoiseOperator {
  double q = 0.0;
  double phi_scale = 1.0;

  double multiplier(double lambda) const;
  // Squared Hilbert-Schmidt norm over the model's modes (sum of multipliers^2).
  double hs_norm_sq(const StokesModel& model) const;
};

// Pathwise solution of dz_j = -nu lambda_j z_j dt + phi_j dbeta_j with
// z_j(0) = 0, advanced one step at a time:
//   z_j(t_{n+1}) = e^{-nu lambda_j dt} z_j(t_n) + phi_j I_n,
//   I_n = beta_{n+1} - e^{-nu lambda_j dt} beta_n
//         - nu lambda_j * integral_{t_n}^{t_{n+1}} e^{-nu lambda_j (t_{n+1}-s)} beta(s) ds,
// where the remaining ordinary integral uses the trapezoid rule on a
// quadrature_order-panel refinement of the piecewise-linear interpolant of
// beta.  Integration by parts makes this valid for every hurst in (0,1).
class ConvolutionTrajectory {
 public:
  const ModelPtr& model() const { return model_; }
  const TimeGrid& grid() const { return grid_; }
  int quadrature_order() const { return quadrature_order_; }
  double hurst() const { return hurst_; }
  std::uint64_t seed() const { return seed_; }
  int n_modes() const;

  // Mode coefficients at grid point n (time-major storage).
  std::span<const double> at(int n) const;
  SpectralField field_at(int n) const;

  // max over grid points of ||z(t_n)||_{L^p} (fourier backend).
  double sup_lp(double p) const;
  // max over grid points of the H^alpha norm (any backend).
  double sup_sobolev(double alpha) const;

  friend ConvolutionTrajectory convolve(const CylindricalPath&,
                                        const ModelPtr&,
                                        const NoiseOperator&,
                                        int quadrature_order);
  friend ConvolutionTrajectory convolve_exact_ou(const ModelPtr&,
                                                 const NoiseOperator&,
                                                 const TimeGrid&,
                                                 std::uint64_t seed);

 private:
  ModelPtr model_;
  TimeGrid grid_;
  int quadrature_order_ = 8;
  double hurst_ = 0.5;
  std::uint64_t seed_ = 0;
  std::vector<double> data_;  // time-major: data_[n * n_modes + j]
};

ConvolutionTrajectory convolve(const CylindricalPath& noise,
                               const ModelPtr& model,
                               const NoiseOperator& op,
                               int quadrature_order = 8);

// Law-exact sampler for hurst = 1/2: per step the convolution increment is
// N(0, phi^2 (1 - e^{-2 nu lambda dt}) / (2 nu lambda)), the stationary
// Ornstein-Uhlenbeck transition.  Oracle for the generic pathwise scheme.
ConvolutionTrajectory convolve_exact_ou(const ModelPtr& model,
                                        const NoiseOperator& op,
                                        const TimeGrid& grid,
                                        std::uint64_t seed);

struct RegularityProbe {
  double sup_norm = 0.0;           // sup_t H^alpha norm with all modes
  std::vector<int> truncations;    // J, 2J, 4J, ...
  std::vector<double> curve;       // sup_t H^alpha norm of the first-J modes
  std::vector<double> ratios;      // successive increment ratios
  double fitted_ratio = 0.0;       // geometric ratio fitted to the increments
  double threshold = 0.9;
  bool convergent = false;         // fitted_ratio < threshold
  bool divergent_flag = false;     // every ratio >= threshold over >= 3 doublings
};

// Truncation-refinement study of sup_t ||z(t)||_{H^alpha}: the curve over
// J, 2J, ... either flattens geometrically (the norm exists in the limit) or
// keeps growing (it does not).  threshold is a calibration constant.
RegularityProbe regularity_probe(const ConvolutionTrajectory& traj,
                                 double alpha, int j0,
                                 double threshold = 0.9);

struct HolderProbe {
  double exponent = 0.0;  // slope of log rms-increment vs log h
  double exponent_stderr = 0.0;
  int n_scales = 0;
  bool degenerate = false;  // zero trajectory
};

// Empirical temporal Hoelder exponent of t -> z(t) in H^alpha over dyadic
// lags; diagnostic only, no pass/fail semantics.
HolderProbe holder_probe(const ConvolutionTrajectory& traj, double alpha);

}  // namespace fbns

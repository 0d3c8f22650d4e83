#pragma once

#include <array>
#include <memory>
#include <vector>

namespace fbns {

enum class Backend {
  fourier,   // divergence-free trigonometric basis on the periodic box
  diagonal,  // scalar surrogate with eigenvalues j^{2/d}, no spatial grid
};

// Discrete Stokes operator on the 2*pi-periodic torus (mean-zero,
// divergence-free fields), diagonal in a real orthonormal eigenbasis.
//
// Fourier backend: wavevectors 0 < |k|_inf <= k_max, one representative per
// {k, -k} pair (first nonzero component positive), sorted by (|k|^2, lex).
// Each representative carries 2(d-1) real modes: cos/sin times each
// polarization vector spanning the plane orthogonal to k.  Eigenvalue |k|^2.
//
// Diagonal backend: n_modes scalar modes with eigenvalue lambda_j = j^{2/d},
// matching the growth law of the Stokes spectrum; used where only the
// eigenvalue sequence matters.
class StokesModel {
 public:
  static std::shared_ptr<const StokesModel> fourier(int d, int k_max,
                                                    double nu = 1.0);
  static std::shared_ptr<const StokesModel> diagonal(int d, int n_modes,
                                                     double nu = 1.0);

  Backend backend() const { return backend_; }
  int dimension() const { return d_; }
  int k_max() const { return k_max_; }
  double nu() const { return nu_; }
  int n_modes() const { return static_cast<int>(lambda_.size()); }
  int n_reps() const { return static_cast<int>(reps_.size()); }
  int modes_per_rep() const { return 2 * (d_ - 1); }

  double eigenvalue(int mode) const { return lambda_[mode]; }
  const std::vector<double>& eigenvalues() const { return lambda_; }

  // Fourier backend only.
  const std::array<int, 3>& rep(int r) const { return reps_[r]; }
  // Polarization vectors of representative r; pol is 0 or (d=3 only) 1.
  const std::array<double, 3>& polarization(int r, int pol) const {
    return pol == 0 ? eps1_[r] : eps2_[r];
  }
  // Real modes of rep r are ordered (cos,eps1),(sin,eps1)[,(cos,eps2),(sin,eps2)].
  int mode_index(int r, int pol, bool sine) const {
    return r * modes_per_rep() + 2 * pol + (sine ? 1 : 0);
  }

  // Collocation grid sizes (FFT-friendly: factors 2, 3, 5).
  // product_grid: exact for quadratic products truncated back to k_max.
  // norm_grid(p): exact for integrals of |u|^p with even integer p.
  int product_grid() const { return product_grid_; }
  int norm_grid(int p_even) const;

 private:
  StokesModel() = default;

  Backend backend_ = Backend::fourier;
  int d_ = 2;
  int k_max_ = 0;
  double nu_ = 1.0;
  int product_grid_ = 0;
  std::vector<std::array<int, 3>> reps_;
  std::vector<std::array<double, 3>> eps1_, eps2_;
  std::vector<double> lambda_;  // per real mode
};

using ModelPtr = std::shared_ptr<const StokesModel>;

// Smallest grid size >= n whose prime factors are all in {2, 3, 5}.
int next_fast_grid(int n);

}  // namespace fbns

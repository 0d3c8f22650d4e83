#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fbns/model.hpp"

namespace fbns {

// One Fourier mode of an unconstrained vector field: wavevector plus a
// complex amplitude per component (no divergence-free requirement).  The
// conjugate mode at -k is implied by realness and must not be listed.
struct RawMode {
  std::array<int, 3> k{0, 0, 0};
  std::array<std::complex<double>, 3> amplitude{};
};

// A vector field in the model's real orthonormal eigenbasis: one coefficient
// per real mode.  ||u||_{L^2}^2 is exactly the coefficient sum of squares;
// divergence-freeness and zero mean hold by construction.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(ModelPtr model)
      : model_(std::move(model)),
        c_(static_cast<std::size_t>(model_->n_modes()), 0.0) {}
  SpectralField(ModelPtr model, std::vector<double> coefs);

  const ModelPtr& model() const { return model_; }
  int size() const { return static_cast<int>(c_.size()); }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  std::span<const double> coefs() const { return c_; }
  std::span<double> coefs() { return c_; }

  double l2_sq() const;
  double l2_norm() const;
  // Sum of lambda^alpha * c^2 (squared H^alpha norm; alpha=1 is ||grad u||^2).
  double sobolev_sq(double alpha) const;
  double sobolev_norm(double s) const;
  double grad_sq() const { return sobolev_sq(1.0); }
  // L^p norm of |u(x)| on the box via uniform collocation (at least 3K+1
  // points per axis): exact for even integer p <= 8, a documented quadrature
  // approximation otherwise.  Fourier backend only; p >= 2 required.
  double lp_norm(double p) const;

  // Complex amplitude u-hat(k) of the rep wavevector (fourier backend).
  std::array<std::complex<double>, 3> mode_amplitude(int rep) const;

  // Pointwise multiply each coefficient by exp(-nu lambda t) (heat semigroup).
  void apply_semigroup(double t);
  // Pointwise multiply by lambda^alpha (fractional power of the operator).
  void fractional_power(double alpha);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  ModelPtr model_;
  std::vector<double> c_;
};

// L^2 inner product (coefficient dot product in the orthonormal basis).
double inner_l2(const SpectralField& a, const SpectralField& b);

// Per mode u-hat <- u-hat - k (k . u-hat)/|k|^2, dropping k = 0; the result
// is divergence-free by construction and the map is idempotent.  Modes with
// lex-negative k are folded onto their conjugate representative.
SpectralField leray_project(const ModelPtr& model,
                            std::span<const RawMode> modes);

// -P div(u (x) v): the advection term projected onto divergence-free fields,
// computed pseudo-spectrally on a dealiased grid (exact convolution for the
// retained modes).  Fourier backend only.
SpectralField bilinear(const SpectralField& u, const SpectralField& v);

// 2D Taylor-Green vortex (steady Euler flow; the advection term vanishes),
// or its 3D analogue.
SpectralField make_taylor_green(const ModelPtr& model, double amplitude);

// Taylor-Green plus a single oblique-mode perturbation, giving a nonzero
// advection term while staying divergence-free.
SpectralField make_perturbed_taylor_green(const ModelPtr& model,
                                          double amplitude,
                                          double perturbation);

// Random coefficients with per-mode standard deviation lambda^{-decay/2},
// drawn from substream (seed, stream).
SpectralField make_random_field(const ModelPtr& model, std::uint64_t seed,
                                std::uint64_t stream, double decay = 0.0);

}  // namespace fbns

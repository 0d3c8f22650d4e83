#include "fbns/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fbns/rng.hpp"
#include "fftw_util.hpp"
#include "grid_ops.hpp"

namespace fbns {

namespace detail {

std::size_t grid_points(int d, int m) {
  std::size_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::size_t>(m);
  return n;
}

double basis_norm(int d) {
  return std::sqrt(2.0) / std::pow(2.0 * std::numbers::pi, 0.5 * d);
}

std::size_t bin_of(const std::array<int, 3>& k, int d, int m) {
  std::size_t idx = 0;
  for (int i = 0; i < d; ++i) {
    const int b = ((k[i] % m) + m) % m;
    idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(b);
  }
  return idx;
}

namespace {

std::array<int, 3> negate(const std::array<int, 3>& k) {
  return {-k[0], -k[1], -k[2]};
}

}  // namespace

void scatter_spectral(const StokesModel& model, const double* coefs, int m,
                      std::vector<std::complex<double>>& grids) {
  const int d = model.dimension();
  const std::size_t np = grid_points(d, m);
  grids.assign(static_cast<std::size_t>(d) * np, {0.0, 0.0});
  const double half_n = 0.5 * basis_norm(d);
  const int mpr = model.modes_per_rep();
  for (int r = 0; r < model.n_reps(); ++r) {
    const auto& k = model.rep(r);
    const std::size_t bp = bin_of(k, d, m);
    const std::size_t bm = bin_of(negate(k), d, m);
    for (int pol = 0; pol < d - 1; ++pol) {
      const double a = coefs[r * mpr + 2 * pol];
      const double b = coefs[r * mpr + 2 * pol + 1];
      if (a == 0.0 && b == 0.0) continue;
      const std::complex<double> w(half_n * a, -half_n * b);
      const auto& eps = model.polarization(r, pol);
      for (int c = 0; c < d; ++c) {
        grids[c * np + bp] += eps[c] * w;
        grids[c * np + bm] += eps[c] * std::conj(w);
      }
    }
  }
}

void synth_physical(const StokesModel& model, const double* coefs, int m,
                    std::vector<double>& out) {
  const int d = model.dimension();
  const std::size_t np = grid_points(d, m);
  std::vector<std::complex<double>> grids;
  scatter_spectral(model, coefs, m, grids);
  out.resize(static_cast<std::size_t>(d) * np);
  int dims[3] = {m, m, m};
  for (int c = 0; c < d; ++c) {
    fft_nd(grids.data() + c * np, dims, d, +1);
    for (std::size_t i = 0; i < np; ++i) {
      out[c * np + i] = grids[c * np + i].real();
    }
  }
}

void gather_coefs(const StokesModel& model,
                  const std::complex<double>* grids, int m, double* coefs) {
  const int d = model.dimension();
  const std::size_t np = grid_points(d, m);
  const double n = basis_norm(d);
  const int mpr = model.modes_per_rep();
  for (int r = 0; r < model.n_reps(); ++r) {
    const std::size_t bp = bin_of(model.rep(r), d, m);
    for (int pol = 0; pol < d - 1; ++pol) {
      const auto& eps = model.polarization(r, pol);
      std::complex<double> w{0.0, 0.0};
      for (int c = 0; c < d; ++c) {
        w += eps[c] * grids[c * np + bp];
      }
      coefs[r * mpr + 2 * pol] = 2.0 * w.real() / n;
      coefs[r * mpr + 2 * pol + 1] = -2.0 * w.imag() / n;
    }
  }
}

}  // namespace detail

SpectralField::SpectralField(ModelPtr model, std::vector<double> coefs)
    : model_(std::move(model)), c_(std::move(coefs)) {
  if (static_cast<int>(c_.size()) != model_->n_modes()) {
    throw std::invalid_argument("coefficient count does not match model");
  }
}

double SpectralField::l2_sq() const {
  double s = 0.0;
  for (const double c : c_) s += c * c;
  return s;
}

double SpectralField::l2_norm() const { return std::sqrt(l2_sq()); }

double SpectralField::sobolev_sq(double alpha) const {
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    s += std::pow(model_->eigenvalue(static_cast<int>(i)), alpha) *
         c_[i] * c_[i];
  }
  return s;
}

double SpectralField::lp_norm(double p) const {
  if (model_->backend() != Backend::fourier) {
    throw std::logic_error("lp_norm needs the fourier backend");
  }
  if (p < 2.0) throw std::invalid_argument("lp_norm: p must be >= 2");
  const int pi = static_cast<int>(p);
  const bool exact = (p == pi) && pi % 2 == 0 && pi <= 8;
  const int m = model_->norm_grid(exact ? pi : 6);
  const int d = model_->dimension();
  std::vector<double> phys;
  detail::synth_physical(*model_, c_.data(), m, phys);
  const std::size_t np = detail::grid_points(d, m);
  double sum = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    double mag2 = 0.0;
    for (int c = 0; c < d; ++c) {
      const double v = phys[c * np + i];
      mag2 += v * v;
    }
    sum += std::pow(mag2, 0.5 * p);
  }
  const double w = std::pow(2.0 * std::numbers::pi / m, d);
  return std::pow(w * sum, 1.0 / p);
}

void SpectralField::apply_semigroup(double t) {
  const double nu = model_->nu();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] *= std::exp(-nu * model_->eigenvalue(static_cast<int>(i)) * t);
  }
}

void SpectralField::fractional_power(double alpha) {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] *= std::pow(model_->eigenvalue(static_cast<int>(i)), alpha);
  }
}

double SpectralField::sobolev_norm(double s) const {
  return std::sqrt(sobolev_sq(s));
}

std::array<std::complex<double>, 3> SpectralField::mode_amplitude(
    int rep) const {
  const int d = model_->dimension();
  const double half_n = 0.5 * detail::basis_norm(d);
  const int mpr = model_->modes_per_rep();
  std::array<std::complex<double>, 3> amp{};
  for (int pol = 0; pol < d - 1; ++pol) {
    const double a = c_[rep * mpr + 2 * pol];
    const double b = c_[rep * mpr + 2 * pol + 1];
    const std::complex<double> w(half_n * a, -half_n * b);
    const auto& eps = model_->polarization(rep, pol);
    for (int c = 0; c < d; ++c) amp[c] += eps[c] * w;
  }
  return amp;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

double inner_l2(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Sets the (cos, sin) coefficients of the rep matching k (or -k), projecting
// the requested complex amplitude onto the rep's polarization basis.
// amp is the desired u-hat(k); the matching -k coefficient is implied.
void add_mode(SpectralField& f, const std::array<int, 3>& k,
              const std::array<std::complex<double>, 3>& amp) {
  const auto& model = *f.model();
  const int d = model.dimension();
  std::array<int, 3> key = k;
  std::array<std::complex<double>, 3> a = amp;
  bool flipped = false;
  for (int i = 0; i < d; ++i) {
    if (key[i] > 0) break;
    if (key[i] < 0) {
      flipped = true;
      break;
    }
  }
  if (flipped) {
    key = {-k[0], -k[1], -k[2]};
    for (auto& c : a) c = std::conj(c);
  }
  for (int r = 0; r < model.n_reps(); ++r) {
    if (model.rep(r) == key) {
      const double n = detail::basis_norm(d);
      const int mpr = model.modes_per_rep();
      for (int pol = 0; pol < d - 1; ++pol) {
        const auto& eps = model.polarization(r, pol);
        std::complex<double> w{0.0, 0.0};
        for (int c = 0; c < d; ++c) w += eps[c] * a[c];
        f[r * mpr + 2 * pol] += 2.0 * w.real() / n;
        f[r * mpr + 2 * pol + 1] += -2.0 * w.imag() / n;
      }
      return;
    }
  }
  throw std::invalid_argument("mode outside model range");
}

}  // namespace

SpectralField make_taylor_green(const ModelPtr& model, double amplitude) {
  SpectralField f(model);
  const int d = model->dimension();
  if (d == 2) {
    // (sin x1 cos x2, -cos x1 sin x2)
    const std::complex<double> i(0.0, 1.0);
    add_mode(f, {1, 1, 0}, {-0.25 * i * amplitude, 0.25 * i * amplitude, 0});
    add_mode(f, {1, -1, 0}, {-0.25 * i * amplitude, -0.25 * i * amplitude, 0});
  } else {
    // (sin x1 cos x2 cos x3, -cos x1 sin x2 cos x3, 0)
    const std::complex<double> i(0.0, 1.0);
    const double a = amplitude / 8.0;
    for (const int s2 : {1, -1}) {
      for (const int s3 : {1, -1}) {
        add_mode(f, {1, s2, s3},
                 {-i * a, i * a * static_cast<double>(s2), 0.0});
      }
    }
  }
  return f;
}

SpectralField make_perturbed_taylor_green(const ModelPtr& model,
                                          double amplitude,
                                          double perturbation) {
  SpectralField f = make_taylor_green(model, amplitude);
  // A single oblique mode polarized orthogonally to k = (2, 1, 0).
  const double n = std::sqrt(5.0);
  add_mode(f, {2, 1, 0},
           {std::complex<double>(-perturbation / n, 0.0),
            std::complex<double>(2.0 * perturbation / n, 0.0), 0.0});
  return f;
}

SpectralField leray_project(const ModelPtr& model,
                            std::span<const RawMode> modes) {
  SpectralField f(model);
  const int d = model->dimension();
  for (const auto& mode : modes) {
    double k2 = 0.0;
    for (int i = 0; i < d; ++i) {
      k2 += static_cast<double>(mode.k[i]) * mode.k[i];
    }
    if (k2 == 0.0) continue;
    std::complex<double> dot{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
      dot += static_cast<double>(mode.k[i]) * mode.amplitude[i];
    }
    std::array<std::complex<double>, 3> proj{};
    for (int i = 0; i < d; ++i) {
      proj[i] = mode.amplitude[i] -
                static_cast<double>(mode.k[i]) * dot / k2;
    }
    add_mode(f, mode.k, proj);
  }
  return f;
}

SpectralField make_random_field(const ModelPtr& model, std::uint64_t seed,
                                std::uint64_t stream, double decay) {
  SpectralField f(model);
  const GaussianStream gs(seed, stream);
  for (int i = 0; i < f.size(); ++i) {
    f[i] = gs.normal(i) * std::pow(model->eigenvalue(i), -0.5 * decay);
  }
  return f;
}

}  // namespace fbns

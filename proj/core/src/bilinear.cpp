#include <complex>
#include <stdexcept>
#include <vector>

#include "fbns/field.hpp"
#include "fftw_util.hpp"
#include "grid_ops.hpp"

namespace fbns {

// B(u, v) = -P div(u (x) v), computed pseudo-spectrally on the product grid
// (size >= 3K+1 per axis), so products of retained modes are represented
// exactly and no aliasing error enters; gathering in the polarization basis
// applies the Leray projection and the mode truncation in one step.
SpectralField bilinear(const SpectralField& u, const SpectralField& v) {
  if (u.model() != v.model()) {
    throw std::invalid_argument("bilinear: operands use different models");
  }
  const ModelPtr& mp = u.model();
  const StokesModel& model = *mp;
  if (model.backend() != Backend::fourier) {
    throw std::logic_error("bilinear needs the fourier backend");
  }
  const int d = model.dimension();
  const int m = model.product_grid();
  const std::size_t np = detail::grid_points(d, m);

  std::vector<double> ug;
  detail::synth_physical(model, u.coefs().data(), m, ug);
  std::vector<double> vg;
  const bool same = &u == &v;
  if (!same) detail::synth_physical(model, v.coefs().data(), m, vg);
  const std::vector<double>& vref = same ? ug : vg;

  // that[(a*d + b)*np + i] holds the transform of u_a(x) v_b(x).
  std::vector<std::complex<double>> that(static_cast<std::size_t>(d) * d * np);
  int dims[3] = {m, m, m};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      std::complex<double>* slot = that.data() + (a * d + b) * np;
      for (std::size_t i = 0; i < np; ++i) {
        slot[i] = ug[a * np + i] * vref[b * np + i];
      }
      detail::fft_nd(slot, dims, d, -1);
    }
  }

  const double inv_np = 1.0 / static_cast<double>(np);
  const double n = detail::basis_norm(d);
  const int mpr = model.modes_per_rep();
  std::vector<double> coefs(static_cast<std::size_t>(model.n_modes()));
  for (int r = 0; r < model.n_reps(); ++r) {
    const auto& k = model.rep(r);
    const std::size_t bp = detail::bin_of(k, d, m);
    std::complex<double> bhat[3];
    for (int b = 0; b < d; ++b) {
      std::complex<double> div{0.0, 0.0};
      for (int a = 0; a < d; ++a) {
        div += static_cast<double>(k[a]) * that[(a * d + b) * np + bp];
      }
      // div_b(k) = i sum_a k_a That_ab(k); B-hat = -div.
      bhat[b] = std::complex<double>(0.0, -inv_np) * div;
    }
    for (int pol = 0; pol < d - 1; ++pol) {
      const auto& eps = model.polarization(r, pol);
      std::complex<double> w{0.0, 0.0};
      for (int b = 0; b < d; ++b) w += eps[b] * bhat[b];
      coefs[r * mpr + 2 * pol] = 2.0 * w.real() / n;
      coefs[r * mpr + 2 * pol + 1] = -2.0 * w.imag() / n;
    }
  }
  return SpectralField(mp, std::move(coefs));
}

}  // namespace fbns

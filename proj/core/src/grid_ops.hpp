#pragma once

#include <complex>
#include <vector>

#include "fbns/model.hpp"

namespace fbns::detail {

// FFT-grid helpers shared by norms and the bilinear term.  Grids are
// component-major: component c occupies [c*M^d, (c+1)*M^d), spatial indices
// row-major with the last axis fastest (FFTW layout).  Bin of wavenumber k
// is (k mod M + M) mod M per axis.

std::size_t grid_points(int d, int m);

// sqrt(2) / (2 pi)^{d/2}: makes N cos(k.x) eps a unit L^2 vector.
double basis_norm(int d);

// Row-major grid bin of wavenumber k (negative entries wrap).
std::size_t bin_of(const std::array<int, 3>& k, int d, int m);

// Coefficients -> physical values of the d velocity components.
void synth_physical(const StokesModel& model, const double* coefs, int m,
                    std::vector<double>& out);

// Coefficients -> spectral grid (u-hat at every bin, conjugate pairs filled).
void scatter_spectral(const StokesModel& model, const double* coefs, int m,
                      std::vector<std::complex<double>>& grids);

// Spectral grid -> coefficients.  Reads only bins with |k|_inf <= k_max and
// expands in the polarization basis, which simultaneously truncates and
// Leray-projects.
void gather_coefs(const StokesModel& model,
                  const std::complex<double>* grids, int m, double* coefs);

}  // namespace fbns::detail

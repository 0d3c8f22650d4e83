#pragma once

#include <cmath>

namespace fbns {

// phi1(x) = (1 - e^{-x}) / x, the first exponential-integrator weight.
// Stable for all x >= 0 via expm1; phi1(0) = 1.
inline double phi1(double x) {
  if (x == 0.0) return 1.0;
  return -std::expm1(-x) / x;
}

// psi(x) = (x - 1 + e^{-x}) / x^2, the trapezoidal-exponential weight.
// The numerator cancels catastrophically for small x, so below x = 1 use
// the alternating series sum_{k>=0} (-x)^k / (k+2)!, which reaches full
// precision in at most 24 terms there.
inline double psi(double x) {
  if (x < 1.0) {
    double term = 0.5;
    double sum = term;
    for (int k = 1; k <= 24; ++k) {
      term *= -x / (k + 2);
      sum += term;
      if (std::abs(term) < 1e-18 * sum) break;
    }
    return sum;
  }
  return (x - 1.0 + std::exp(-x)) / (x * x);
}

}  // namespace fbns

#include "fbns/stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fbns {

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("fit_slope: size mismatch");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw std::invalid_argument("fit_slope: need at least 2 points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_slope: degenerate x");
  }
  SlopeFit f;
  f.n = n;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n >= 3) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      ss_res += r * r;
    }
    f.slope_stderr =
        std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx);
  }
  return f;
}

namespace {

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 lambda^2}.
double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 101; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double xi = sa[i];
    const double xj = sb[j];
    if (xi <= xj) {
      while (i < sa.size() && sa[i] == xi) ++i;
    }
    if (xj <= xi) {
      while (j < sb.size() && sb[j] == xj) ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  const double ne = std::sqrt(na * nb / (na + nb));
  r.p_value = kolmogorov_q(ne * d);
  return r;
}

MeanVar mean_variance(std::span<const double> xs) {
  MeanVar mv;
  mv.n = xs.size();
  double mean = 0.0, m2 = 0.0;
  std::size_t k = 0;
  for (const double x : xs) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  mv.mean = mean;
  mv.variance = (mv.n >= 2) ? m2 / static_cast<double>(mv.n - 1) : 0.0;
  return mv;
}

}  // namespace fbns

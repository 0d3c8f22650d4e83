#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbns {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // from residual variance; 0 if n < 3
  std::size_t n = 0;
};

// Ordinary least squares y ~ intercept + slope * x.
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y);

struct KsResult {
  double statistic = 0.0;  // sup |F1 - F2|
  double p_value = 1.0;    // asymptotic Kolmogorov distribution
};

// Two-sample Kolmogorov-Smirnov test (inputs copied and sorted internally).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator); 0 if n < 2
  std::size_t n = 0;
};

MeanVar mean_variance(std::span<const double> xs);

}  // namespace fbns

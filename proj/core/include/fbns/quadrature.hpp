#pragma once

#include <functional>

namespace fbns {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod (G7/K15) on a finite interval.  Bisects until the
// per-panel |K15 - G7| estimate meets tol_abs + tol_rel * |panel value|.
QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double tol_rel = 1e-12,
                        double tol_abs = 0.0, int max_depth = 30);

}  // namespace fbns

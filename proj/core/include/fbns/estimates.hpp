#pragma once

#include <cstdint>

#include "fbns/model.hpp"

namespace fbns {

// Empirical constants for the smoothing estimates of the heat semigroup.
// The constants are measured, never assumed: each routine reports the sup of
// the relevant scaled quotient over log-spaced times and a random-field
// corpus drawn from (seed, stream = field index).

// sup over t in [t_lo, t_hi] and fields u of t^alpha ||A^alpha S(t)u||_2
// / ||u||_2.  Scalar calculus bounds it by (alpha/e)^alpha.
double measure_smoothing_constant(const ModelPtr& model, double alpha,
                                  double t_lo = 1e-4, double t_hi = 1.0,
                                  int n_times = 64, int n_fields = 100,
                                  std::uint64_t seed = 2024);

// sup over t in [t_lo, t_hi] and fields u of
// t^{(d/2)(1/r - 1/p)} ||S(t)u||_p / ||u||_r, for 2 <= r <= p.
double measure_lr_lp_constant(const ModelPtr& model, double r, double p,
                              double t_lo = 1e-3, double t_hi = 1.0,
                              int n_times = 32, int n_fields = 100,
                              std::uint64_t seed = 2024);

// Semigroup constant offered to the solver's tau formula when calibration is
// requested: the measured L^{p/2} -> L^p constant (the quotient exercised by
// the Duhamel bound on B), floored at 1.
double calibrated_solver_constant(const ModelPtr& model, double p);

}  // namespace fbns

#pragma once

#include <cstdint>
#include <vector>

#include "fbns/field.hpp"
#include "fbns/grid.hpp"
#include "fbns/model.hpp"

namespace fbns {

// Discrete audit of the 2D energy inequality
//   (1/2) d/dt ||v||^2 + ||grad v||^2 = <B(v + z, z), v>
// against its Gronwall envelope E' = C ||z||_4^4 (E + 1), E(0) = ||v(0)||^2.
struct EnergyLedger {
  std::vector<double> t;
  std::vector<double> v_l2_sq;
  std::vector<double> grad_v_sq;
  std::vector<double> z_l4_fourth;
  std::vector<double> envelope;
  std::vector<double> residual;  // size n_steps: forward-difference defect
  double c_constant = 0.0;
  double max_trilinear_defect = 0.0;  // max |<B(v + z, v), v>| over steps
  bool pass = false;                  // v_l2_sq <= envelope at every point
};

EnergyLedger energy_audit(const std::vector<SpectralField>& v,
                          const std::vector<SpectralField>& z,
                          const TimeGrid& grid, double c_constant);

// Empirical Ladyzhenskaya constant: sup of ||w||_4 / (||w||_2^{1/2}
// ||grad w||_2^{1/2}) over single-mode fields and random spectra.
double calibrate_ladyzhenskaya(const ModelPtr& model, int n_fields = 100,
                               std::uint64_t seed = 7);

// Gronwall constant implied by the Young-split absorption argument with the
// measured Ladyzhenskaya constant; never below the conventional floor 2.
double gronwall_constant(double ladyzhenskaya);

struct InterpolationReport {
  double r = 0.0;      // time exponent
  double s = 0.0;      // spatial Sobolev order
  double theta = 0.0;  // interpolation weight (= 2/r)
  double lhs = 0.0;    // ||v||_{L^r_t H^s}
  double sup_l2 = 0.0;
  double l2_h1 = 0.0;
  double rhs = 0.0;  // sup_l2^{1-theta} * l2_h1^theta
  bool holds = false;
};

// Discrete L^r_t H^s norm with (r, s) = (2p/(p-2), 1-2/p) for d = 2 and
// (4p/(3(p-2)), 3(p-2)/(2p)) for d = 3, checked against the interpolation
// bound ||v||_{L^r H^s} <= ||v||_{L^inf L^2}^{1-theta} ||v||_{L^2 H^1}^theta.
InterpolationReport interpolation_norms(const std::vector<SpectralField>& v,
                                        const TimeGrid& grid, double p);

}  // namespace fbns

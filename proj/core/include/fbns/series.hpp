#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fbns {

// The diagonal Stokes surrogate has eigenvalues lambda_j = j^{2/d}.  For a
// noise operator with multipliers lambda^{-q/2}, the squared Hilbert-Schmidt
// norm of A^... S(t) Phi reduces to the scalar series
//     s_q(t) = sum_{j>=1} exp(-2 t j^{2/d}) * j^{-2q/d},
// evaluated here with a certified enclosure.
struct SeriesQuery {
  int d = 2;       // 2 or 3
  double q = 0.0;  // regularity exponent of the noise multipliers
  double t = 1.0;  // > 0
};

struct SeriesResult {
  double value = 0.0;        // best estimate, inside [lower, upper]
  double lower = 0.0;        // certified enclosure of the full series
  double upper = 0.0;
  double partial_sum = 0.0;  // sum of the first terms terms
  double tail_bound = 0.0;   // certified upper bound on the dropped remainder
  long long terms = 0;       // J: number of terms summed directly
  bool capped = false;       // terms cap hit before the width target
};

// Enclosure strategy: beyond the maximizer the summand decreases, so the
// integral test gives  P + I(J+1) <= s <= P + I(J)  with the midpoint value
// P + I(J+1/2).  If the maximizer x* = (-q/(2t))^{d/2} lies beyond J (q < 0),
// the sum-integral defect on the unimodal remainder is bounded by the peak
// value a_t(x*).  J doubles from 1024 until the relative enclosure width
// meets rel_width_target or max_terms is reached.
SeriesResult eval_eigen_series(const SeriesQuery& query,
                               double rel_width_target = 1e-10,
                               long long max_terms = 4000000);

struct RegimeRow {
  double t;
  double partial_sum;
  double tail_bound;
  double shape;  // comparison envelope: 1, (2-ln t)^2, or t^{q-d/2}
  double ratio;  // series value / shape
};

struct RegimeReport {
  std::string regime;  // "summable", "critical", or "growing"
  double sup_ratio = 0.0;
  double slope_last_decade = 0.0;  // log-ratio slope vs log t near t_min
  bool bounded = true;
  bool pass = false;  // slope >= slope_floor and all ratios finite
  double slope_floor = -0.01;
  std::vector<RegimeRow> rows;
};

// Checks the small-t growth class of s_q(t) against its predicted shape on a
// log grid [t_min, t_max].  The slope rule is applied on the decade adjacent
// to t_min, where the shape comparison is asymptotic.
RegimeReport verify_regime(int d, double q, double t_min = 1e-6,
                           double t_max = 1.0, int points_per_decade = 8,
                           double slope_floor = -0.01);

struct AdmissibilityReport {
  int d = 2;
  double p = 4.0;
  double q = 0.0;
  double hurst = 0.5;
  double lhs = 0.0;     // (d/2)(1 - 1/p) - q/2
  double margin = 0.0;  // hurst - lhs
  bool admissible = false;
  bool void_for_all_hurst = false;  // lhs >= 1: no hurst < 1 can satisfy it
};

// Admissible iff p > d, 0 < hurst < 1, and hurst > (d/2)(1 - 1/p) - q/2.
AdmissibilityReport check_admissibility(int d, double p, double q,
                                        double hurst);

}  // namespace fbns

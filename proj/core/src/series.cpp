#include "fbns/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fbns/quadrature.hpp"
#include "fbns/stats.hpp"

namespace fbns {
namespace {

double summand(const SeriesQuery& s, double x) {
  const double e = 2.0 / static_cast<double>(s.d);
  return std::exp(-2.0 * s.t * std::pow(x, e)) * std::pow(x, -s.q * e);
}

// Integral over [x_lo, infinity) of the summand, via u = 2 t x^{2/d}:
//   integral = (d/2) (2t)^{q - d/2} * int_{u_lo}^inf e^{-u} u^{s-1} du,
// s = (d - 2q)/2.  The u-integral is truncated where the integrand is below
// 1e-26 of its left-endpoint scale and evaluated adaptively.
double tail_integral(const SeriesQuery& sq, double x_lo) {
  const double d = static_cast<double>(sq.d);
  const double s = 0.5 * (d - 2.0 * sq.q);
  const double u_lo = 2.0 * sq.t * std::pow(x_lo, 2.0 / d);
  double u_hi = u_lo + 64.0;
  if (s > 1.0) {
    // account for the algebraic growth before exponential decay wins
    u_hi += (s - 1.0) * std::log(u_hi + s);
    u_hi += (s - 1.0) * std::log(u_hi + s);
  }
  const auto g = [s](double u) { return std::exp(-u) * std::pow(u, s - 1.0); };
  const QuadResult r = integrate_gk(g, u_lo, u_hi, 1e-13, 0.0, 36);
  const double factor = 0.5 * d * std::pow(2.0 * sq.t, sq.q - 0.5 * d);
  return factor * r.value;
}

}  // namespace

SeriesResult eval_eigen_series(const SeriesQuery& query,
                               double rel_width_target, long long max_terms) {
  if (query.t <= 0.0) throw std::invalid_argument("series: t must be > 0");
  if (query.d != 2 && query.d != 3) {
    throw std::invalid_argument("series: d must be 2 or 3");
  }
  const double d = static_cast<double>(query.d);
  // Maximizer of the continuous summand; the summand decreases beyond it.
  const double x_star =
      query.q < 0.0 ? std::pow(-query.q / (2.0 * query.t), 0.5 * d) : 1.0;

  SeriesResult out;
  long long J = std::min<long long>(1024, max_terms);
  long long summed = 0;
  double partial = 0.0;
  for (;;) {
    for (long long j = summed + 1; j <= J; ++j) {
      partial += summand(query, static_cast<double>(j));
    }
    summed = J;
    const double Jr = static_cast<double>(J);
    double lower, upper, value, tail_bound;
    if (x_star <= Jr) {
      // Monotone remainder: integral test sandwich, midpoint value.
      const double i_hi = tail_integral(query, Jr);
      const double i_lo = tail_integral(query, Jr + 1.0);
      const double i_mid = tail_integral(query, Jr + 0.5);
      lower = partial + i_lo;
      upper = partial + i_hi;
      value = partial + i_mid;
      tail_bound = i_hi;
    } else {
      // Unimodal remainder: |sum - integral| <= peak value.
      const double peak = summand(query, x_star);
      const double i = tail_integral(query, Jr);
      lower = std::max(partial, partial + i - peak);
      upper = partial + i + peak;
      value = partial + i;
      tail_bound = i + peak;
    }
    out.value = value;
    out.lower = lower;
    out.upper = upper;
    out.partial_sum = partial;
    out.tail_bound = tail_bound;
    out.terms = J;
    const double width = upper - lower;
    const double scale = std::max(std::abs(value), 1e-300);
    if (width / scale <= rel_width_target) {
      out.capped = false;
      break;
    }
    if (J >= max_terms) {
      out.capped = true;
      break;
    }
    J = std::min(J * 2, max_terms);
  }
  return out;
}

RegimeReport verify_regime(int d, double q, double t_min, double t_max,
                           int points_per_decade, double slope_floor) {
  if (t_min <= 0.0 || t_max <= t_min) {
    throw std::invalid_argument("verify_regime: bad t range");
  }
  RegimeReport rep;
  rep.slope_floor = slope_floor;
  const double half_d = 0.5 * static_cast<double>(d);
  if (q > half_d) {
    rep.regime = "summable";
  } else if (q == half_d) {
    rep.regime = "critical";
  } else {
    rep.regime = "growing";
  }

  const int decades =
      static_cast<int>(std::ceil(std::log10(t_max / t_min) - 1e-12));
  const int n = std::max(2, decades * points_per_decade + 1);
  const double lstep = (std::log(t_max) - std::log(t_min)) / (n - 1);
  bool finite = true;
  for (int i = 0; i < n; ++i) {
    const double t = std::exp(std::log(t_min) + i * lstep);
    const SeriesResult s = eval_eigen_series({d, q, t}, 1e-8);
    double shape;
    if (q > half_d) {
      shape = 1.0;
    } else if (q == half_d) {
      const double l = 2.0 - std::log(t);
      shape = l * l;
    } else {
      shape = std::pow(t, q - half_d);
    }
    RegimeRow row;
    row.t = t;
    row.partial_sum = s.partial_sum;
    row.tail_bound = s.tail_bound;
    row.shape = shape;
    row.ratio = s.value / shape;
    if (!std::isfinite(row.ratio)) finite = false;
    rep.rows.push_back(row);
    rep.sup_ratio = std::max(rep.sup_ratio, row.ratio);
  }

  // Slope of log ratio vs log t on the decade adjacent to t_min.
  std::vector<double> lx, ly;
  for (const auto& row : rep.rows) {
    if (row.t <= 10.0 * t_min * (1.0 + 1e-9) && row.ratio > 0.0) {
      lx.push_back(std::log(row.t));
      ly.push_back(std::log(row.ratio));
    }
  }
  if (lx.size() >= 2) {
    rep.slope_last_decade = fit_slope(lx, ly).slope;
  }
  rep.bounded = finite;
  rep.pass = finite && rep.slope_last_decade >= slope_floor;
  return rep;
}

AdmissibilityReport check_admissibility(int d, double p, double q,
                                        double hurst) {
  AdmissibilityReport r;
  r.d = d;
  r.p = p;
  r.q = q;
  r.hurst = hurst;
  r.lhs = 0.5 * static_cast<double>(d) * (1.0 - 1.0 / p) - 0.5 * q;
  r.margin = hurst - r.lhs;
  r.void_for_all_hurst = r.lhs >= 1.0;
  r.admissible = (p > static_cast<double>(d)) && (hurst > 0.0) &&
                 (hurst < 1.0) && (r.margin > 0.0);
  return r;
}

}  // namespace fbns

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fbns/series.hpp"

using namespace fbns;

namespace {

// High-precision reference values for s_q(t) = sum_j exp(-2 t j^{2/d}) j^{-2q/d},
// frozen from an independent arbitrary-precision evaluation.
struct Oracle {
  int d;
  double q;
  double t;
  double value;
};

constexpr Oracle kOracles[] = {
    {2, 1.0, 0.01, 3.9220063388170345948},
    {2, 1.0, 0.5, 0.45867514538708189102},
    {2, -1.0, 0.5, 0.92067359420779231895},
    {2, -0.5, 0.5, 0.70724071848680379075},
    {2, 3.0, 0.25, 0.66393310054482767174},
    {3, 1.5, 0.5, 0.55932380177568905154},
    {3, -1.0, 0.5, 1.8775961806217978846},
    {3, 0.0, 0.5, 0.96483821560990337617},
    {3, 1.5, 0.05, 3.2612329450664962541},
};

}  // namespace

TEST_CASE("series enclosures bracket the reference values") {
  for (const auto& o : kOracles) {
    const auto r = eval_eigen_series({o.d, o.q, o.t});
    CAPTURE(o.d);
    CAPTURE(o.q);
    CAPTURE(o.t);
    // Enclosure roundoff slack: the bounds are certified in exact
    // arithmetic, not in floating point.
    CHECK(r.lower * (1.0 - 1e-13) <= o.value);
    CHECK(o.value <= r.upper * (1.0 + 1e-13));
    CHECK(r.value == doctest::Approx(o.value).epsilon(1e-9));
    CHECK(r.lower <= r.value);
    CHECK(r.value <= r.upper);
    CHECK(r.tail_bound >= 0.0);
    CHECK(!r.capped);
    CHECK((r.upper - r.lower) <= 2e-10 * r.upper);
  }
}

TEST_CASE("the d=2 q=0 series matches its geometric closed form") {
  // s_0(t) = sum_j e^{-2tj} = 1 / (e^{2t} - 1).
  for (const double t : {0.05, 0.1, 0.5, 1.0, 2.0}) {
    const double exact = 1.0 / std::expm1(2.0 * t);
    const auto r = eval_eigen_series({2, 0.0, t});
    // The enclosure is certified in exact arithmetic; allow summation
    // roundoff of the bounds themselves.
    CHECK(r.lower * (1.0 - 1e-13) <= exact);
    CHECK(exact <= r.upper * (1.0 + 1e-13));
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
  }
  const auto at_tenth = eval_eigen_series({2, 0.0, 0.1});
  CHECK(at_tenth.value ==
        doctest::Approx(4.5166555661269948051).epsilon(1e-12));
}

TEST_CASE("t times the d=2 q=0 series approaches one half") {
  const double t = 1e-6;
  const auto r = eval_eigen_series({2, 0.0, t});
  const double scaled = t * r.value;
  CHECK(scaled == doctest::Approx(0.49999950000016666667).epsilon(1e-9));
  CHECK(scaled > 0.49);
  CHECK(scaled < 0.51);
}

TEST_CASE("partial sum plus tail stays consistent") {
  const auto r = eval_eigen_series({3, -1.0, 0.5});
  CHECK(r.terms >= 1);
  CHECK(r.partial_sum <= r.upper);
  CHECK(r.partial_sum + r.tail_bound >= r.upper - 1e-16 * r.upper);
}

TEST_CASE("regime verdicts and shapes per exponent class") {
  // q = 0 < d/2 grows like t^{-1}; the ratio against that shape is t * s(t).
  const auto flat = verify_regime(2, 0.0);
  CHECK(flat.regime == "growing");
  CHECK(flat.pass);
  CHECK(flat.sup_ratio > 0.49);
  CHECK(flat.sup_ratio < 0.51);

  // q = 3 > d/2 stays bounded by zeta(3) as t -> 0.
  const auto summable = verify_regime(2, 3.0, 1e-4, 1.0, 6);
  CHECK(summable.regime == "summable");
  CHECK(summable.pass);
  CHECK(summable.sup_ratio > 1.19);
  CHECK(summable.sup_ratio < 1.2021);

  const auto critical = verify_regime(2, 1.0, 1e-4, 1.0, 6);
  CHECK(critical.regime == "critical");
  CHECK(critical.pass);
  CHECK(critical.slope_last_decade >= critical.slope_floor);

  const auto growing = verify_regime(2, -1.0, 1e-4, 1.0, 6);
  CHECK(growing.regime == "growing");
  CHECK(growing.pass);
  CHECK(!growing.rows.empty());
  for (const auto& row : growing.rows) {
    CHECK(std::isfinite(row.ratio));
    CHECK(row.ratio > 0.0);
  }
}

TEST_CASE("admissibility follows the exponent inequality") {
  // d=2, q=0: admissible exactly when hurst > 1 - 1/p.
  const auto good = check_admissibility(2, 4.0, 0.0, 0.8);
  CHECK(good.admissible);
  CHECK(good.lhs == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(!good.void_for_all_hurst);

  const auto bad = check_admissibility(2, 4.0, 0.0, 0.7);
  CHECK(!bad.admissible);

  // d=3, q=0, p=4: lhs = 1.125 >= 1, no hurst below one can work.
  const auto never = check_admissibility(3, 4.0, 0.0, 0.95);
  CHECK(!never.admissible);
  CHECK(never.void_for_all_hurst);
  CHECK(never.lhs == doctest::Approx(1.125).epsilon(1e-15));

  // p must exceed the dimension.
  CHECK(!check_admissibility(2, 2.0, 0.0, 0.9).admissible);
  CHECK(!check_admissibility(3, 3.0, 1.0, 0.9).admissible);

  // Smoothing noise (q > 0) relaxes the threshold.
  const auto smooth = check_admissibility(3, 4.0, 1.5, 0.6);
  CHECK(smooth.lhs == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(smooth.admissible);

  // Hurst outside the open unit interval never passes.
  CHECK(!check_admissibility(2, 4.0, 0.0, 1.0).admissible);
}

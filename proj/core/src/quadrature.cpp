#include "fbns/quadrature.hpp"

#include <cmath>

namespace fbns {
namespace {

// QUADPACK dqk15 nodes and weights (positive half; node 7 is the midpoint).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) {
      gauss += kWg[i / 2] * fsum;
    }
  }
  Panel p;
  p.kronrod = kron * h;
  p.error = std::abs((kron - gauss) * h);
  return p;
}

void refine(const std::function<double(double)>& f, double a, double b,
            const Panel& p, double tol_rel, double tol_abs, int depth,
            QuadResult& out) {
  const double tol =
      std::max(tol_abs, tol_rel * std::abs(p.kronrod));
  if (p.error <= tol || depth <= 0) {
    out.value += p.kronrod;
    out.error_estimate += p.error;
    if (p.error > tol) out.converged = false;
    return;
  }
  const double m = 0.5 * (a + b);
  const Panel left = gk15(f, a, m);
  const Panel right = gk15(f, m, b);
  out.evaluations += 30;
  refine(f, a, m, left, tol_rel, tol_abs, depth - 1, out);
  refine(f, m, b, right, tol_rel, tol_abs, depth - 1, out);
}

}  // namespace

QuadResult integrate_gk(const std::function<double(double)>& f, double a,
                        double b, double tol_rel, double tol_abs,
                        int max_depth) {
  QuadResult out;
  if (a == b) return out;
  const Panel whole = gk15(f, a, b);
  out.evaluations = 15;
  refine(f, a, b, whole, tol_rel, tol_abs, max_depth, out);
  return out;
}

}  // namespace fbns

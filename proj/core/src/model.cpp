#include "fbns/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbns {

int next_fast_grid(int n) {
  for (int m = n;; ++m) {
    int r = m;
    for (const int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

namespace {

bool lex_positive(const std::array<int, 3>& k, int d) {
  for (int i = 0; i < d; ++i) {
    if (k[i] > 0) return true;
    if (k[i] < 0) return false;
  }
  return false;  // zero vector
}

int norm_sq(const std::array<int, 3>& k) {
  return k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
}

std::array<double, 3> cross(const std::array<double, 3>& a,
                            const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

std::array<double, 3> normalized(const std::array<double, 3>& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

std::shared_ptr<const StokesModel> StokesModel::fourier(int d, int k_max,
                                                        double nu) {
  if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (nu <= 0.0) throw std::invalid_argument("nu must be > 0");

  auto m = std::shared_ptr<StokesModel>(new StokesModel());
  m->backend_ = Backend::fourier;
  m->d_ = d;
  m->k_max_ = k_max;
  m->nu_ = nu;
  m->product_grid_ = next_fast_grid(3 * k_max + 1);

  std::vector<std::array<int, 3>> reps;
  const int lo = -k_max, hi = k_max;
  std::array<int, 3> k{0, 0, 0};
  for (k[0] = lo; k[0] <= hi; ++k[0]) {
    for (k[1] = lo; k[1] <= hi; ++k[1]) {
      if (d == 2) {
        if (lex_positive(k, d)) reps.push_back(k);
      } else {
        for (k[2] = lo; k[2] <= hi; ++k[2]) {
          if (lex_positive(k, d)) reps.push_back(k);
        }
        k[2] = 0;
      }
    }
  }
  std::sort(reps.begin(), reps.end(),
            [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
              const int na = norm_sq(a), nb = norm_sq(b);
              if (na != nb) return na < nb;
              return a < b;
            });
  m->reps_ = std::move(reps);

  const int mpr = 2 * (d - 1);
  m->lambda_.resize(m->reps_.size() * mpr);
  m->eps1_.resize(m->reps_.size());
  if (d == 3) m->eps2_.resize(m->reps_.size());

  for (std::size_t r = 0; r < m->reps_.size(); ++r) {
    const auto& kr = m->reps_[r];
    const double lam = static_cast<double>(norm_sq(kr));
    for (int j = 0; j < mpr; ++j) {
      m->lambda_[r * mpr + j] = lam;
    }
    const std::array<double, 3> kd{static_cast<double>(kr[0]),
                                   static_cast<double>(kr[1]),
                                   static_cast<double>(kr[2])};
    if (d == 2) {
      // The unique unit vector orthogonal to k in the plane.
      const double n = std::sqrt(lam);
      m->eps1_[r] = {-kd[1] / n, kd[0] / n, 0.0};
    } else {
      // Helper axis: coordinate direction minimizing |k_i| (ties toward
      // the smaller index), guaranteed not parallel to k.
      int axis = 0;
      for (int i = 1; i < 3; ++i) {
        if (std::abs(kr[i]) < std::abs(kr[axis])) axis = i;
      }
      std::array<double, 3> e{0.0, 0.0, 0.0};
      e[axis] = 1.0;
      const auto ke = cross(kd, e);
      m->eps1_[r] = normalized(ke);
      m->eps2_[r] = normalized(cross(kd, m->eps1_[r]));
    }
  }
  return m;
}

std::shared_ptr<const StokesModel> StokesModel::diagonal(int d, int n_modes,
                                                         double nu) {
  if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
  if (nu <= 0.0) throw std::invalid_argument("nu must be > 0");
  auto m = std::shared_ptr<StokesModel>(new StokesModel());
  m->backend_ = Backend::diagonal;
  m->d_ = d;
  m->nu_ = nu;
  m->lambda_.resize(n_modes);
  for (int j = 0; j < n_modes; ++j) {
    m->lambda_[j] = std::pow(static_cast<double>(j + 1), 2.0 / d);
  }
  return m;
}

int StokesModel::norm_grid(int p_even) const {
  if (backend_ != Backend::fourier) {
    throw std::logic_error("norm_grid: fourier backend only");
  }
  return next_fast_grid(std::max(3 * k_max_, p_even * k_max_ + 1));
}

}  // namespace fbns

#include "fbns/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "fbns/rng.hpp"
#include "fftw_util.hpp"

namespace fbns {

double fbm_covariance(double hurst, double t, double s) {
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) -
                std::pow(std::abs(t - s), h2));
}

double fgn_autocovariance(double hurst, double dt, long long lag) {
  const double h2 = 2.0 * hurst;
  const double k = static_cast<double>(std::llabs(lag));
  return 0.5 * std::pow(dt, h2) *
         (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) +
          std::pow(std::abs(k - 1.0), h2));
}

std::string to_string(FbmGenerator g) {
  return g == FbmGenerator::circulant ? "circulant" : "cholesky";
}

FbmGenerator fbm_generator_from_string(const std::string& name) {
  if (name == "circulant") return FbmGenerator::circulant;
  if (name == "cholesky") return FbmGenerator::cholesky;
  throw std::invalid_argument("unknown fbm generator: " + name);
}

namespace {

// Eigenvalues of the circulant embedding of the fGn covariance, cached per
// (hurst, n_steps, dt).  The embedding of fGn is provably nonnegative
// definite; tiny negative round-off is clamped, anything larger is an error.
class CirculantCache {
 public:
  std::shared_ptr<const std::vector<double>> get(double hurst,
                                                 const TimeGrid& grid) {
    const Key key{hurst, grid.dt(), grid.n_steps};
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto lam = std::make_shared<std::vector<double>>(compute(hurst, grid));
    cache_.emplace(key, lam);
    return lam;
  }

 private:
  struct Key {
    double hurst;
    double dt;
    int n;
    auto operator<=>(const Key&) const = default;
  };

  static std::vector<double> compute(double hurst, const TimeGrid& grid) {
    const int n = grid.n_steps;
    const int m = 2 * n;
    std::vector<std::complex<double>> row(m);
    for (int k = 0; k <= n; ++k) {
      row[k] = fgn_autocovariance(hurst, grid.dt(), k);
    }
    for (int k = 1; k < n; ++k) {
      row[m - k] = row[k];
    }
    detail::fft_1d(row.data(), m, -1);
    std::vector<double> lam(m);
    double max_lam = 0.0;
    for (int k = 0; k < m; ++k) {
      lam[k] = row[k].real();
      max_lam = std::max(max_lam, lam[k]);
    }
    for (double& l : lam) {
      if (l < 0.0) {
        if (l < -1e-10 * max_lam) {
          throw std::runtime_error(
              "circulant embedding produced a significantly negative "
              "eigenvalue");
        }
        l = 0.0;
      }
    }
    return lam;
  }

  std::mutex mu_;
  std::map<Key, std::shared_ptr<const std::vector<double>>> cache_;
};

CirculantCache& circulant_cache() {
  static CirculantCache cache;
  return cache;
}

std::vector<double> sample_circulant(double hurst, const TimeGrid& grid,
                                     const GaussianStream& stream) {
  const int n = grid.n_steps;
  const int m = 2 * n;
  const auto lam = circulant_cache().get(hurst, grid);
  std::vector<double> g(m);
  stream.fill_normal(g.data(), m);

  std::vector<std::complex<double>> w(m);
  const double mr = static_cast<double>(m);
  w[0] = std::sqrt((*lam)[0] / mr) * g[0];
  w[n] = std::sqrt((*lam)[n] / mr) * g[1];
  for (int k = 1; k < n; ++k) {
    const double s = std::sqrt((*lam)[k] / (2.0 * mr));
    w[k] = std::complex<double>(s * g[2 * k], s * g[2 * k + 1]);
    w[m - k] = std::conj(w[k]);
  }
  detail::fft_1d(w.data(), m, -1);

  std::vector<double> path(grid.points());
  path[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    path[i + 1] = path[i] + w[i].real();
  }
  return path;
}

// Dense-factorization oracle: exact finite-dimensional law, O(n^3) setup.
class CholeskyCache {
 public:
  std::shared_ptr<const Eigen::MatrixXd> get(double hurst,
                                             const TimeGrid& grid) {
    const Key key{hurst, grid.dt(), grid.n_steps};
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const int n = grid.n_steps;
    Eigen::MatrixXd cov(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double c =
            fbm_covariance(hurst, grid.time(i + 1), grid.time(j + 1));
        cov(i, j) = c;
        cov(j, i) = c;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("fbm covariance not positive definite");
    }
    auto l = std::make_shared<Eigen::MatrixXd>(llt.matrixL());
    cache_.emplace(key, l);
    return l;
  }

 private:
  struct Key {
    double hurst;
    double dt;
    int n;
    auto operator<=>(const Key&) const = default;
  };
  std::mutex mu_;
  std::map<Key, std::shared_ptr<const Eigen::MatrixXd>> cache_;
};

CholeskyCache& cholesky_cache() {
  static CholeskyCache cache;
  return cache;
}

std::vector<double> sample_cholesky(double hurst, const TimeGrid& grid,
                                    const GaussianStream& stream) {
  const int n = grid.n_steps;
  const auto l = cholesky_cache().get(hurst, grid);
  Eigen::VectorXd g(n);
  stream.fill_normal(g.data(), n);
  const Eigen::VectorXd b = (*l) * g;
  std::vector<double> path(grid.points());
  path[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    path[i + 1] = b[i];
  }
  return path;
}

}  // namespace

std::vector<double> sample_fbm_path(double hurst, const TimeGrid& grid,
                                    std::uint64_t seed, std::uint64_t stream,
                                    FbmGenerator generator) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::invalid_argument("hurst must be in (0, 1)");
  }
  if (grid.n_steps < 1 || grid.t_final <= 0.0) {
    throw std::invalid_argument("bad time grid");
  }
  const GaussianStream gs(seed, stream);
  return generator == FbmGenerator::circulant
             ? sample_circulant(hurst, grid, gs)
             : sample_cholesky(hurst, grid, gs);
}

CylindricalPath CylindricalPath::sample(double hurst, const TimeGrid& grid,
                                        int n_modes, std::uint64_t seed,
                                        FbmGenerator generator) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be >= 1");
  CylindricalPath p;
  p.hurst_ = hurst;
  p.seed_ = seed;
  p.grid_ = grid;
  p.n_modes_ = n_modes;
  p.generator_ = generator;
  p.data_.resize(static_cast<std::size_t>(n_modes) * grid.points());
  for (int j = 0; j < n_modes; ++j) {
    const auto path = sample_fbm_path(hurst, grid, seed, j, generator);
    std::copy(path.begin(), path.end(),
              p.data_.begin() + static_cast<std::size_t>(j) * grid.points());
  }
  return p;
}

CylindricalPath CylindricalPath::from_parts(double hurst, const TimeGrid& grid,
                                            int n_modes, std::uint64_t seed,
                                            FbmGenerator generator,
                                            std::vector<double> data) {
  if (data.size() != static_cast<std::size_t>(n_modes) *
                         static_cast<std::size_t>(grid.points())) {
    throw std::invalid_argument("from_parts: data size mismatch");
  }
  CylindricalPath p;
  p.hurst_ = hurst;
  p.seed_ = seed;
  p.grid_ = grid;
  p.n_modes_ = n_modes;
  p.generator_ = generator;
  p.data_ = std::move(data);
  return p;
}

CylindricalPath CylindricalPath::decimate(int stride) const {
  if (stride < 1 || grid_.n_steps % stride != 0) {
    throw std::invalid_argument("decimate: stride must divide n_steps");
  }
  CylindricalPath p;
  p.hurst_ = hurst_;
  p.seed_ = seed_;
  p.grid_ = TimeGrid{grid_.t_final, grid_.n_steps / stride};
  p.n_modes_ = n_modes_;
  p.generator_ = generator_;
  p.data_.resize(static_cast<std::size_t>(n_modes_) * p.grid_.points());
  const std::size_t pts = static_cast<std::size_t>(p.grid_.points());
  for (int j = 0; j < n_modes_; ++j) {
    const auto src = mode(j);
    for (std::size_t n = 0; n < pts; ++n) {
      p.data_[static_cast<std::size_t>(j) * pts + n] =
          src[n * static_cast<std::size_t>(stride)];
    }
  }
  return p;
}

}  // namespace fbns

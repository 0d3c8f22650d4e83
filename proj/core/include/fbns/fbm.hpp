#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fbns/grid.hpp"

namespace fbns {

// Covariance of fractional Brownian motion:
//   R(t, s) = (1/2)(t^{2H} + s^{2H} - |t-s|^{2H}).
double fbm_covariance(double hurst, double t, double s);

// Autocovariance of the stationary increment sequence on a dt grid:
//   gamma(k) = (dt^{2H}/2)(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocovariance(double hurst, double dt, long long lag);

enum class FbmGenerator {
  circulant,  // Davies-Harte circulant embedding, exact in law, O(N log N)
  cholesky,   // dense factorization oracle, exact in law, O(N^3) setup
};

std::string to_string(FbmGenerator g);
FbmGenerator fbm_generator_from_string(const std::string& name);

// One scalar path on the grid; result[0] = 0, result.size() = n_steps + 1.
// Draw i of substream (seed, stream) is a pure function of (seed, stream, i),
// so paths are reproducible and extending a simulation with more streams
// leaves existing ones bit-identical.
std::vector<double> sample_fbm_path(double hurst, const TimeGrid& grid,
                                    std::uint64_t seed, std::uint64_t stream,
                                    FbmGenerator generator =
                                        FbmGenerator::circulant);

// A stack of n_modes independent scalar paths; mode j uses substream j.
class CylindricalPath {
 public:
  static CylindricalPath sample(double hurst, const TimeGrid& grid,
                                int n_modes, std::uint64_t seed,
                                FbmGenerator generator =
                                    FbmGenerator::circulant);

  // Reassembles a path from stored parts (deserialization).
  static CylindricalPath from_parts(double hurst, const TimeGrid& grid,
                                    int n_modes, std::uint64_t seed,
                                    FbmGenerator generator,
                                    std::vector<double> data);

  double hurst() const { return hurst_; }
  std::uint64_t seed() const { return seed_; }
  const TimeGrid& grid() const { return grid_; }
  int n_modes() const { return n_modes_; }
  FbmGenerator generator() const { return generator_; }

  // Row-major (mode, time): one contiguous row per mode.
  std::span<const double> mode(int j) const {
    return {data_.data() + static_cast<std::size_t>(j) * grid_.points(),
            static_cast<std::size_t>(grid_.points())};
  }
  double value(int mode_index, int n) const {
    return data_[static_cast<std::size_t>(mode_index) * grid_.points() + n];
  }
  std::span<const double> raw() const { return data_; }

  // Restriction to every stride-th grid point (n_steps must divide evenly):
  // the same noise realization viewed on a coarser grid.
  CylindricalPath decimate(int stride) const;

 private:
  double hurst_ = 0.5;
  std::uint64_t seed_ = 0;
  TimeGrid grid_;
  int n_modes_ = 0;
  FbmGenerator generator_ = FbmGenerator::circulant;
  std::vector<double> data_;
};

}  // namespace fbns

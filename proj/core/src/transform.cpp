#include "fftw_util.hpp"

#include <fftw3.h>

#include <array>
#include <map>
#include <mutex>

namespace fbns::detail {
namespace {

// Plan creation is not thread-safe in FFTW; execution via the new-array
// interface is.  ESTIMATE-only planning keeps results deterministic (measured
// planning picks algorithms by timing, which can vary run to run).
class PlanCache {
 public:
  // All spatial grids are cubic, so (rank, n, sign) identifies a plan.
  fftw_plan get(int rank, int n, int sign) {
    const std::array<int, 3> key{rank, n, sign};
    std::lock_guard lock(mu_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    int dims[3] = {n, n, n};
    std::size_t total = 1;
    for (int r = 0; r < rank; ++r) total *= static_cast<std::size_t>(n);
    fftw_complex* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(rank, dims, scratch, scratch, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::array<int, 3>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void execute(fftw_plan plan, std::complex<double>* data) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace

void fft_1d(std::complex<double>* data, int n, int sign) {
  execute(plan_cache().get(1, n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD),
          data);
}

void fft_nd(std::complex<double>* data, const int* dims, int rank, int sign) {
  execute(plan_cache().get(rank, dims[0],
                           sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD),
          data);
}

}  // namespace fbns::detail

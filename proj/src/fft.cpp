#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hylos::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  PlanPair get(const Grid& grid) {
    const auto key = std::make_tuple(grid.dim(), grid.count(0), grid.count(1), grid.count(2));
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    // FFTW is row-major with the last index fastest; our axis 1 is fastest.
    int dims[3];
    const int rank = grid.dim();
    for (int d = 0; d < rank; ++d) dims[d] = static_cast<int>(grid.count(rank - 1 - d));
    auto* scratch = fftw_alloc_complex(grid.size());
    PlanPair p;
    p.forward = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft(rank, dims, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, std::size_t, std::size_t, std::size_t>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(std::span<cplx> data) { return reinterpret_cast<fftw_complex*>(data.data()); }

}  // namespace

void fft_forward(const Grid& grid, std::span<cplx> data) {
  auto plans = cache().get(grid);
  fftw_execute_dft(plans.forward, as_fftw(data), as_fftw(data));
}

void fft_backward(const Grid& grid, std::span<cplx> data) {
  auto plans = cache().get(grid);
  fftw_execute_dft(plans.backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& v : data) v *= scale;
}

}  // namespace hylos::detail

#include "cosine_transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace chemotaxis::detail {

namespace {

// FFTW planning is not thread-safe; executing an existing plan on new arrays
// is. Plans are created once per shape under a lock and never destroyed.
struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

PlanPair plans_for(int nx, int ny, int dim) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, PlanPair> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(nx, ny, dim);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<double> scratch(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair pair{};
  if (dim == 1) {
    pair.forward = fftw_plan_r2r_1d(nx, scratch.data(), scratch.data(), FFTW_REDFT10, flags);
    pair.backward = fftw_plan_r2r_1d(nx, scratch.data(), scratch.data(), FFTW_REDFT01, flags);
  } else {
    // row-major with x fastest: FFTW's first dimension is the slow one (y)
    pair.forward = fftw_plan_r2r_2d(ny, nx, scratch.data(), scratch.data(), FFTW_REDFT10, FFTW_REDFT10, flags);
    pair.backward = fftw_plan_r2r_2d(ny, nx, scratch.data(), scratch.data(), FFTW_REDFT01, FFTW_REDFT01, flags);
  }
  cache.emplace(key, pair);
  return pair;
}

}  // namespace

CosineTransform::CosineTransform(const Grid& grid) {
  const PlanPair pair = plans_for(grid.nx(), grid.ny(), grid.dim());
  forward_plan_ = pair.forward;
  backward_plan_ = pair.backward;
  scale_ = 2.0 * grid.nx() * (grid.dim() == 2 ? 2.0 * grid.ny() : 1.0);
}

void CosineTransform::forward(std::span<double> data) const {
  fftw_execute_r2r(static_cast<fftw_plan>(const_cast<void*>(forward_plan_)), data.data(), data.data());
}

void CosineTransform::backward(std::span<double> data) const {
  fftw_execute_r2r(static_cast<fftw_plan>(const_cast<void*>(backward_plan_)), data.data(), data.data());
}

}  // namespace chemotaxis::detail

#pragma once

#include <complex>
#include <mutex>
#include <vector>

namespace szego {

// Per-weight cache of trigonometric moments. Created by CircleWeight,
// filled and read under the mutex by compute_moments.
class MomentCache {
 public:
  std::mutex mutex;
  double rel_tol = 0;  // tolerance the cached values satisfy
  std::vector<std::complex<double>> c;
  std::vector<double> err;
};

}  // namespace szego

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "szego/weights.hpp"

namespace szego {

// Trigonometric moments c_j = integral of conj(xi)^j w dm, j = 0..n-1.
// c_{-j} = conj(c_j) is implied; the Toeplitz moment matrix is
// T[j][k] = c_{j-k}.
struct MomentSequence {
  std::size_t n = 0;
  std::vector<std::complex<double>> c;
  std::vector<double> error_estimate;  // absolute, per moment
  bool normalized = false;             // |c_0 - 1| within tolerance
};

// Computes the first n moments by adaptive quadrature. Results are cached on
// the weight: asking for more moments later extends the cache instead of
// recomputing, and cache extension is atomic per j. Even real weights take a
// cosine-transform path and produce exactly real moments.
MomentSequence compute_moments(const CircleWeight& w, std::size_t n,
                               double rel_tol = 1e-12);

}  // namespace szego

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "szego/weights.hpp"

namespace szego {

// Poisson integral (1/2pi) * integral of f(theta) P(z, e^{i theta}) dtheta
// for |z| < 1. Panels are refined geometrically near the kernel peak at
// arg z down to width (1 - |z|)/64; singular_points adds mandatory panel
// boundaries (angles of kinks of f).
double poisson_integral(const std::function<double(double)>& f, std::complex<double> z,
                        std::span<const double> singular_points = {},
                        double rel_tol = 1e-12);

// Relative entropy functional
//   K(z) = log( P[w](z) ) - P[log w](z),
// nonnegative for probability weights by Jensen's inequality. Tiny negative
// values from quadrature noise (>= -1e-10) are clamped to 0; anything more
// negative reports a NumericalError with both integrals.
double entropy_at(const CircleWeight& w, std::complex<double> z, double rel_tol = 1e-12);

struct EntropyProfile {
  std::complex<double> zeta;
  std::vector<double> rho;  // increasing
  std::vector<double> K;
};

// K on a log-spaced grid of 1-rho in [eps_min, eps_max] along the ray to
// zeta; points counts both endpoints.
EntropyProfile entropy_profile(const CircleWeight& w, std::complex<double> zeta,
                               double eps_min, double eps_max, std::size_t points,
                               double rel_tol = 1e-12);

// sup over rho in [rho_min, 1) of K(rho zeta), scanned on a geometric grid in
// 1-rho that is refined until the sup is stable to 1e-3 relative.
double entropy_sup_on_radius(const CircleWeight& w, std::complex<double> zeta,
                             double rho_min, double rel_tol = 1e-10);

enum class EntropyFitModel { plain, log_corrected };

struct EntropyFit {
  EntropyFitModel model;
  double beta = 0;              // exponent
  double C = 0;                 // multiplicative constant
  double max_rel_residual = 0;  // max |K_fit - K| / K over the grid
};

// Least-squares fit of log K against log(1-rho) (plain) or against
// log((1-rho) |log(1-rho)|) (log_corrected). Requires at least 8 grid points
// spanning at least two decades of 1-rho; throws InvalidArgument otherwise.
EntropyFit fit_entropy_exponent(const EntropyProfile& profile, EntropyFitModel model);

}  // namespace szego

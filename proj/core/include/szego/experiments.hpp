#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "szego/entropy.hpp"
#include "szego/kernels.hpp"
#include "szego/weights.hpp"

namespace szego {

// One row of the diagonal rate experiment at x_n = 1 - 1/n:
//   D = | k_n(x_n, x_n)/k_n(1, 1) - (1 - x_n^{2n})/(n (1 - x_n^2)) |.
// alpha_cand mirrors the companion script's recurrence
//   alpha_cand(r) = r (D_{r-1}/D_r - 1)   (r = n/step, 1-based row index)
// and c_alpha_cand(r) = D_r * n^{alpha_cand(r)}. Both are absent on the first
// row (no predecessor) and on any row whose D vanishes.
struct RateRecord {
  std::size_t n = 0;
  double x_n = 0;
  double D = 0;
  std::optional<double> alpha_cand;
  std::optional<double> c_alpha_cand;
};

struct RateTable {
  std::string weight;
  std::size_t N = 0, step = 0;
  std::vector<RateRecord> rows;
  // Least-squares slope of log D vs log n over the tail window n > N/2;
  // absent when some tail D vanishes (exact-universality weights).
  std::optional<double> tail_slope;
};

struct RateOptions {
  double moment_rel_tol = 1e-12;
  KernelStrategy strategy = KernelStrategy::sum_form;
};

// Runs the sweep n = step, 2*step, ..., N. Requires step >= 1, N a multiple
// of step, and at least 3 rows. Rows are computed in parallel and emitted in
// order of n; repeated runs give identical tables.
RateTable rate_experiment(const CircleWeight& w, std::size_t N, std::size_t step,
                          const RateOptions& opt = {});

// f1(n) = D(n) and f2(n) = C * n^{-s} with C the final c_alpha_cand of the
// underlying rate table. tail_ok records whether f1 >= f2 * (1 - 1e-6) held
// for every tail row (n > N/2). f2 and C are absent when the final row has no
// c_alpha_cand (e.g. identically vanishing D).
struct Figure2Row {
  std::size_t n = 0;
  double f1 = 0;
  std::optional<double> f2;
};

struct Figure2Table {
  std::string weight;
  double s = 0;
  std::size_t N = 0, step = 0;
  std::optional<double> C;
  std::vector<Figure2Row> rows;
  bool tail_ok = false;
  std::optional<double> tail_slope;
};

Figure2Table figure2_data(const CircleWeight& w, double s, std::size_t N,
                          std::size_t step, const RateOptions& opt = {});

// sup over u, v in [-1, 1] (grid_points per axis) of the deviation at
// z1 = zeta e^{u/n}, z2 = zeta e^{v/n}, zeta = 1, for each n in n_list.
struct PoissonCheckRow {
  std::size_t n = 0;
  double sup_deviation = 0;
  double n_times_sup = 0;
};

struct PoissonCheckTable {
  std::complex<double> lambda;
  std::vector<PoissonCheckRow> rows;
  // max/min of n_times_sup; absent if some sup vanishes (lambda = 0).
  std::optional<double> band_ratio;
};

PoissonCheckTable poisson_example_check(std::complex<double> lambda,
                                        std::span<const std::size_t> n_list,
                                        std::size_t grid_points = 41);

// Empirical counterpart of the kernel comparison bound
//   lhs <= c e^{4A} sqrt( sup_{rho in [1-delta, 1)} K(rho zeta) ):
// lhs is the max deviation over ordered pairs from a polar grid of the disk
// B(zeta, A/n) (17 radii x 32 angles at density 1, plus the center),
// delta = A/n its radius. The absolute constant c is not knowable, so the
// report carries empirical_ratio = lhs / (e^{4A} sqrt(entropy_sup)) for
// boundedness checks across n sweeps.
struct Theorem1Report {
  std::string weight;
  std::complex<double> zeta;
  double A = 0;
  std::size_t n = 0;
  double delta = 0;
  double lhs = 0;
  double entropy_sup = 0;
  double rhs_core = 0;  // e^{4A} sqrt(entropy_sup)
  std::optional<double> empirical_ratio;
};

Theorem1Report theorem1_check(const CircleWeight& w, std::complex<double> zeta,
                              double A, std::size_t n, double grid_density = 1.0,
                              const RateOptions& opt = {});

}  // namespace szego

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "szego/opuc.hpp"

namespace szego {

enum class KernelStrategy { sum_form, cd_form };

// One pointwise evaluation of phi_n, phi*_n, reusable across many pairs when
// taking sups over grids with the cd-form.
struct KernelPoint {
  Complex z;
  Complex phi_n;
  Complex phi_star_n;
};

struct DeviationSample {
  std::size_t n = 0;
  Complex zeta, z1, z2;
  Complex ratio;      // k_n(z1,z2) / k_n(zeta,zeta)
  Complex universal;  // (1 - conj(z2)^n z1^n) / (n (1 - conj(z2) z1))
  double deviation = 0;
};

// Reproducing kernel k_n(z1, z2) = sum_{k<n} conj(phi_k(z2)) phi_k(z1) of the
// degree-(n-1) polynomial space. The sum form runs the recurrence at both
// points; the cd form evaluates phi_n, phi*_n once per point and uses the
// quotient identity, switching back to the sum when |1 - conj(z2) z1| < 1e-6.
class KernelContext {
 public:
  KernelContext(std::shared_ptr<const VerblunskyCoefficients> v, std::size_t n,
                KernelStrategy strategy = KernelStrategy::sum_form,
                double max_log_radius = 8.0);

  std::size_t n() const { return n_; }
  KernelStrategy strategy() const { return strategy_; }
  const VerblunskyCoefficients& coefficients() const { return *v_; }

  Complex kernel(Complex z1, Complex z2) const;

  // k_n(zeta, zeta); cached per zeta, guaranteed positive.
  double diagonal(Complex zeta) const;

  // phi_n, phi*_n at one point, for cd-form pair evaluation over grids.
  KernelPoint prepare(Complex z) const;
  Complex kernel_from(const KernelPoint& p1, const KernelPoint& p2) const;

  // |zeta| must be 1 within 1e-12. The ratio at z1 = z2 = zeta is 1 exactly.
  DeviationSample deviation(Complex zeta, Complex z1, Complex z2) const;

 private:
  Complex kernel_sum(Complex z1, Complex z2) const;
  void check_radius(Complex z) const;

  std::shared_ptr<const VerblunskyCoefficients> v_;
  std::size_t n_;
  KernelStrategy strategy_;
  double max_log_radius_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::size_t, double> diagonal_cache_;
};

// Convenience: moments -> levinson -> context.
KernelContext make_kernel_context(const CircleWeight& w, std::size_t n,
                                  KernelStrategy strategy = KernelStrategy::sum_form,
                                  double moment_rel_tol = 1e-12);

// (1 - (conj(z2) z1)^n) / (n (1 - conj(z2) z1)), evaluated stably; below
// |1 - conj(z2) z1| = 1e-8 the truncated geometric series is summed directly.
Complex universal_ratio(Complex z1, Complex z2, std::size_t n);

// (e^{u + conj(v)} - 1) / (u + conj(v)) with the series used for
// |u + conj(v)| < 1e-6.
Complex sine_type_limit(Complex u, Complex v);

}  // namespace szego

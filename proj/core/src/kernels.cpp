#include "szego/kernels.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "szego/errors.hpp"
#include "szego/weights.hpp"

namespace szego {

namespace {

constexpr double kCdSwitch = 1e-6;      // |1 - conj(z2) z1| below which cd form degrades
constexpr double kSeriesSwitch = 1e-8;  // universal_ratio series region

// log(1 + w) for complex w, accurate for small |w|:
// Re = 0.5 log1p(2 Re w + |w|^2), Im = atan2(Im w, 1 + Re w).
Complex clog1p(Complex w) {
  const double x = w.real(), y = w.imag();
  return {0.5 * std::log1p(2 * x + x * x + y * y), std::atan2(y, 1 + x)};
}

// e^w - 1, accurate for small |w|. The imaginary part is reduced mod 2 pi
// first so big rotations do not wreck the real-part cancellation:
// e^{x+iy} - 1 = (expm1(x) cos y - 2 sin^2(y/2)) + i (expm1(x) + 1) sin y.
Complex cexpm1(Complex w) {
  const double x = w.real();
  const double y = std::remainder(w.imag(), 2 * std::numbers::pi);
  const double ex = std::expm1(x);
  const double s = std::sin(0.5 * y);
  return {ex * std::cos(y) - 2 * s * s, (ex + 1) * std::sin(y)};
}

std::size_t key_of(Complex z) {
  // Bit pattern of the point, so the diagonal cache distinguishes -0.0 etc.
  // exactly as the arithmetic does.
  static_assert(sizeof(Complex) == 2 * sizeof(double));
  double re = z.real(), im = z.imag();
  std::size_t a, b;
  std::memcpy(&a, &re, sizeof a);
  std::memcpy(&b, &im, sizeof b);
  return a ^ (b * 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

KernelContext::KernelContext(std::shared_ptr<const VerblunskyCoefficients> v,
                             std::size_t n, KernelStrategy strategy,
                             double max_log_radius)
    : v_(std::move(v)), n_(n), strategy_(strategy), max_log_radius_(max_log_radius) {
  if (!v_) throw InvalidArgument("KernelContext: null coefficients");
  if (n_ == 0) throw InvalidArgument("KernelContext: n must be >= 1");
  if (n_ - 1 > v_->size())
    throw InvalidArgument("KernelContext: kernel of order " + std::to_string(n_) +
                          " needs " + std::to_string(n_ - 1) +
                          " recurrence coefficients, have " +
                          std::to_string(v_->size()));
  if (strategy_ == KernelStrategy::cd_form && n_ > v_->size())
    throw InvalidArgument(
        "KernelContext: the cd form of order " + std::to_string(n_) + " needs " +
        std::to_string(n_) + " recurrence coefficients, have " +
        std::to_string(v_->size()));
}

void KernelContext::check_radius(Complex z) const {
  const double r = std::abs(z);
  if (r > 1.0 && static_cast<double>(n_) * std::log(r) > max_log_radius_)
    throw NumericalError("kernel evaluation at |z| = " + std::to_string(r) +
                         " with n = " + std::to_string(n_) +
                         " would overflow the working range");
}

Complex KernelContext::kernel_sum(Complex z1, Complex z2) const {
  check_radius(z1);
  check_radius(z2);
  SzegoRecurrence r1(*v_, z1), r2(*v_, z2);
  Complex acc = std::conj(r2.phi()) * r1.phi();
  for (std::size_t k = 1; k < n_; ++k) {
    r1.advance();
    r2.advance();
    acc += std::conj(r2.phi()) * r1.phi();
  }
  return acc;
}

KernelPoint KernelContext::prepare(Complex z) const {
  check_radius(z);
  SzegoRecurrence r(*v_, z);
  for (std::size_t k = 0; k < n_; ++k) r.advance();
  return {z, r.phi(), r.phi_star()};
}

Complex KernelContext::kernel_from(const KernelPoint& p1, const KernelPoint& p2) const {
  const Complex q = std::conj(p2.z) * p1.z;
  if (std::abs(Complex(1, 0) - q) < kCdSwitch) return kernel_sum(p1.z, p2.z);
  return (std::conj(p2.phi_star_n) * p1.phi_star_n -
          std::conj(p2.phi_n) * p1.phi_n) /
         (Complex(1, 0) - q);
}

Complex KernelContext::kernel(Complex z1, Complex z2) const {
  if (strategy_ == KernelStrategy::sum_form) return kernel_sum(z1, z2);
  return kernel_from(prepare(z1), prepare(z2));
}

double KernelContext::diagonal(Complex zeta) const {
  const std::size_t key = key_of(zeta);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = diagonal_cache_.find(key);
    if (it != diagonal_cache_.end()) return it->second;
  }
  // The diagonal is a sum of |phi_k|^2: compute it that way so it is positive
  // by construction (the cd form would difference two large terms here).
  check_radius(zeta);
  SzegoRecurrence r(*v_, zeta);
  double acc = std::norm(r.phi());
  for (std::size_t k = 1; k < n_; ++k) {
    r.advance();
    acc += std::norm(r.phi());
  }
  if (!(acc > 0) || !std::isfinite(acc))
    throw NumericalError("kernel diagonal is not positive at the requested point");
  std::lock_guard<std::mutex> lock(cache_mutex_);
  diagonal_cache_.emplace(key, acc);
  return acc;
}

DeviationSample KernelContext::deviation(Complex zeta, Complex z1, Complex z2) const {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw InvalidArgument("deviation: the reference point must lie on the unit circle");
  DeviationSample s;
  s.n = n_;
  s.zeta = zeta;
  s.z1 = z1;
  s.z2 = z2;
  if (z1 == zeta && z2 == zeta) {
    // k_n(zeta,zeta)/k_n(zeta,zeta): bypass roundoff, the ratio is exactly 1.
    s.ratio = Complex(1, 0);
  } else {
    s.ratio = kernel(z1, z2) / diagonal(zeta);
  }
  s.universal = universal_ratio(z1, z2, n_);
  s.deviation = std::abs(s.ratio - s.universal);
  return s;
}

KernelContext make_kernel_context(const CircleWeight& w, std::size_t n,
                                  KernelStrategy strategy, double moment_rel_tol) {
  // The cd form needs one more recurrence step than the sum form.
  const std::size_t coeffs = (strategy == KernelStrategy::cd_form) ? n : n - 1;
  MomentSequence m = compute_moments(w, coeffs + 1, moment_rel_tol);
  auto v = std::make_shared<VerblunskyCoefficients>(levinson(m));
  return KernelContext(std::move(v), n, strategy);
}

Complex universal_ratio(Complex z1, Complex z2, std::size_t n) {
  if (n == 0) throw InvalidArgument("universal_ratio: n must be >= 1");
  const Complex q = std::conj(z2) * z1;
  const Complex delta = q - Complex(1, 0);
  const double nd = static_cast<double>(n);
  if (std::abs(delta) < kSeriesSwitch) {
    // Truncated geometric series, summed directly.
    Complex acc{0, 0}, p{1, 0};
    for (std::size_t k = 0; k < n; ++k) {
      acc += p;
      p *= q;
    }
    return acc / nd;
  }
  // 1 - q^n = -expm1(n log q) and 1 - q = -delta, so the signs cancel:
  // (1 - q^n) / (n (1 - q)) = expm1(n log1p(delta)) / (n delta).
  return cexpm1(nd * clog1p(delta)) / (nd * delta);
}

Complex sine_type_limit(Complex u, Complex v) {
  const Complex w = u + std::conj(v);
  const double r = std::abs(w);
  if (r < 1e-6) {
    // (e^w - 1)/w = 1 + w/2 + w^2/6 + w^3/24, remainder below 1e-25 here.
    return Complex(1, 0) + w * (Complex(0.5, 0) + w * (Complex(1.0 / 6, 0) +
                                                       w * Complex(1.0 / 24, 0)));
  }
  return cexpm1(w) / w;
}

}  // namespace szego

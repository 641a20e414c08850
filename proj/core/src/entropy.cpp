#include "szego/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "szego/errors.hpp"
#include "szego/parallel.hpp"
#include "szego/quadrature.hpp"

namespace szego {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  if (theta >= -kPi && theta < kPi) return theta;
  double t = std::remainder(theta, 2 * kPi);
  if (t >= kPi) t -= 2 * kPi;
  if (t < -kPi) t += 2 * kPi;
  return t;
}

}  // namespace

double poisson_integral(const std::function<double(double)>& f, std::complex<double> z,
                        std::span<const double> singular_points, double rel_tol) {
  const double r = std::abs(z);
  if (!(r < 1.0)) throw InvalidArgument("poisson_integral: need |z| < 1");

  const double phi = std::arg(z);
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;

  // Integrate over [phi - pi, phi + pi] so the kernel peak sits mid-interval.
  const double lo = phi - kPi, hi = phi + kPi;
  for (double s : singular_points) {
    double t = phi + std::remainder(s - phi, 2 * kPi);
    if (t > lo && t < hi) opt.breakpoints.push_back(t);
  }
  // The kernel has width ~(1 - r) at the peak; panel edges doubling outward
  // from that scale keep each panel smooth.
  if (r > 0) {
    for (double h = (1.0 - r) / 64.0; h < kPi; h *= 2) {
      opt.breakpoints.push_back(phi - h);
      opt.breakpoints.push_back(phi + h);
    }
  }

  // 1 - 2 r cos d + r^2 = (1 - r)^2 + 4 r sin^2(d/2), stable near the peak.
  const double num = (1.0 - r) * (1.0 + r);
  auto integrand = [&](double theta) {
    const double s = std::sin(0.5 * (theta - phi));
    const double den = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
    return f(wrap_angle(theta)) * (num / den);
  };
  auto res = integrate_adaptive(integrand, lo, hi, opt);
  return res.value / (2 * kPi);
}

double entropy_at(const CircleWeight& w, std::complex<double> z, double rel_tol) {
  const std::span<const double> sing(w.singular_points());
  const double pw =
      poisson_integral([&w](double t) { return w(t); }, z, sing, rel_tol);
  if (!(pw > 0))
    throw NumericalError("entropy_at: harmonic extension of the weight is not positive");
  const double plogw =
      poisson_integral([&w](double t) { return w.log_value(t); }, z, sing, rel_tol);
  double K = std::log(pw) - plogw;
  if (K < 0) {
    if (K < -1e-10)
      throw NumericalError("entropy_at: negative value " + std::to_string(K) +
                           " (log mean " + std::to_string(std::log(pw)) +
                           ", mean log " + std::to_string(plogw) +
                           "); the weight is probably not integrable enough");
    K = 0;  // quadrature noise on a zero of the functional
  }
  return K;
}

EntropyProfile entropy_profile(const CircleWeight& w, std::complex<double> zeta,
                               double eps_min, double eps_max, std::size_t points,
                               double rel_tol) {
  if (!(eps_min > 0) || !(eps_max < 1) || !(eps_min < eps_max))
    throw InvalidArgument("entropy_profile: need 0 < eps_min < eps_max < 1");
  if (points < 2) throw InvalidArgument("entropy_profile: need at least 2 points");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw InvalidArgument("entropy_profile: zeta must lie on the unit circle");
  const std::complex<double> dir = zeta / std::abs(zeta);

  EntropyProfile out;
  out.zeta = zeta;
  out.rho.resize(points);
  out.K.resize(points);
  const double llo = std::log(eps_min), lhi = std::log(eps_max);
  for (std::size_t i = 0; i < points; ++i) {
    // Largest eps first, so rho increases with the index.
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    out.rho[i] = 1.0 - std::exp(lhi + (llo - lhi) * t);
  }
  parallel_for(points, [&](std::size_t i) {
    out.K[i] = entropy_at(w, out.rho[i] * dir, rel_tol);
  });
  return out;
}

double entropy_sup_on_radius(const CircleWeight& w, std::complex<double> zeta,
                             double rho_min, double rel_tol) {
  if (!(rho_min >= 0) || !(rho_min < 1))
    throw InvalidArgument("entropy_sup_on_radius: need 0 <= rho_min < 1");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw InvalidArgument("entropy_sup_on_radius: zeta must lie on the unit circle");
  const std::complex<double> dir = zeta / std::abs(zeta);

  const double eps_max = 1.0 - rho_min;
  const double eps_min = std::min(1e-8, eps_max / 2);
  const double llo = std::log(eps_min), lhi = std::log(eps_max);

  // Geometric scan in 1 - rho, density doubled until the sup stops moving.
  double prev = -1.0;
  for (std::size_t points = 33; points <= 2049; points = 2 * points - 1) {
    std::vector<double> K(points);
    parallel_for(points, [&](std::size_t i) {
      const double t = static_cast<double>(i) / static_cast<double>(points - 1);
      const double rho = 1.0 - std::exp(lhi + (llo - lhi) * t);
      K[i] = entropy_at(w, rho * dir, rel_tol);
    });
    const double sup = *std::max_element(K.begin(), K.end());
    if (prev >= 0 && std::abs(sup - prev) <= 1e-3 * std::max(sup, 1e-300)) return sup;
    prev = sup;
  }
  throw NumericalError("entropy_sup_on_radius: sup did not stabilize to 1e-3");
}

EntropyFit fit_entropy_exponent(const EntropyProfile& profile, EntropyFitModel model) {
  const std::size_t n = profile.rho.size();
  if (n < 8 || profile.K.size() != n)
    throw InvalidArgument("fit_entropy_exponent: need at least 8 profile points");
  std::vector<double> x(n), y(n);
  double eps_lo = 1.0, eps_hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = 1.0 - profile.rho[i];
    if (!(eps > 0) || !(eps < 1))
      throw InvalidArgument("fit_entropy_exponent: rho values must lie in (0, 1)");
    if (!(profile.K[i] > 0))
      throw InvalidArgument("fit_entropy_exponent: all K values must be positive");
    eps_lo = std::min(eps_lo, eps);
    eps_hi = std::max(eps_hi, eps);
    x[i] = (model == EntropyFitModel::plain)
               ? std::log(eps)
               : std::log(eps * std::abs(std::log(eps)));
    y[i] = std::log(profile.K[i]);
  }
  if (std::log10(eps_hi / eps_lo) < 2.0 - 1e-9)
    throw InvalidArgument(
        "fit_entropy_exponent: grid must span at least two decades of 1 - rho");

  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  EntropyFit fit;
  fit.model = model;
  fit.beta = sxy / sxx;
  fit.C = std::exp(my - fit.beta * mx);
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.C * std::exp(fit.beta * x[i]);
    fit.max_rel_residual =
        std::max(fit.max_rel_residual, std::abs(pred - profile.K[i]) / profile.K[i]);
  }
  return fit;
}

}  // namespace szego

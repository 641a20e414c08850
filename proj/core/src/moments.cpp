#include "szego/moments.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include "moment_cache.hpp"
#include "szego/errors.hpp"
#include "szego/parallel.hpp"
#include "szego/quadrature.hpp"

namespace szego {

namespace {
constexpr double kPi = std::numbers::pi;

struct MomentValue {
  std::complex<double> c;
  double err;
};

// One moment by adaptive quadrature. The envelope of cos(j theta) caps the
// panel width at pi/(4(j+1)): at most an eighth of a period per panel.
MomentValue moment_by_quadrature(const CircleWeight& w, std::size_t j, double rel_tol) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_panel_width = kPi / (4.0 * (static_cast<double>(j) + 1.0));
  const double dj = static_cast<double>(j);

  if (w.even()) {
    // c_j = (1/pi) * int_0^pi cos(j t) w(t) dt, exactly real.
    for (double s : w.singular_points())
      if (s > 0 && s < kPi) opt.breakpoints.push_back(s);
    auto r = integrate_adaptive(
        [&w, dj](double t) { return std::cos(dj * t) * w(t); }, 0.0, kPi, opt);
    return {std::complex<double>(r.value / kPi, 0.0), r.error_estimate / kPi};
  }

  for (double s : w.singular_points())
    if (s > -kPi && s < kPi) opt.breakpoints.push_back(s);
  opt.breakpoints.push_back(0.0);
  auto re = integrate_adaptive(
      [&w, dj](double t) { return std::cos(dj * t) * w(t); }, -kPi, kPi, opt);
  auto im = integrate_adaptive(
      [&w, dj](double t) { return std::sin(dj * t) * w(t); }, -kPi, kPi, opt);
  return {std::complex<double>(re.value, -im.value) / (2 * kPi),
          (re.error_estimate + im.error_estimate) / (2 * kPi)};
}

}  // namespace

MomentSequence compute_moments(const CircleWeight& w, std::size_t n, double rel_tol) {
  if (n == 0) throw InvalidArgument("compute_moments: n must be >= 1");
  if (!(rel_tol > 0)) throw InvalidArgument("compute_moments: rel_tol must be > 0");

  MomentSequence out;
  out.n = n;
  MomentCache& cache = w.moment_cache();
  for (;;) {
    double tol = 0;
    std::size_t have = 0;
    {
      std::lock_guard<std::mutex> lock(cache.mutex);
      if (cache.rel_tol == 0 || rel_tol < cache.rel_tol) {
        // First use, or a stricter tolerance: start over at the new tolerance.
        cache.rel_tol = rel_tol;
        cache.c.clear();
        cache.err.clear();
      }
      tol = cache.rel_tol;
      have = cache.c.size();
      if (have >= n) {
        out.c.assign(cache.c.begin(), cache.c.begin() + static_cast<std::ptrdiff_t>(n));
        out.error_estimate.assign(cache.err.begin(),
                                  cache.err.begin() + static_cast<std::ptrdiff_t>(n));
        break;
      }
    }

    std::vector<MomentValue> fresh(n - have);
    parallel_for(n - have, [&](std::size_t i) {
      fresh[i] = moment_by_quadrature(w, have + i, tol);
    });

    bool merged = false;
    {
      std::lock_guard<std::mutex> lock(cache.mutex);
      if (cache.rel_tol == tol) {
        // Another call may have extended the cache meanwhile; values for a
        // given j are deterministic, so only append what is still missing.
        for (std::size_t j = cache.c.size(); j < n; ++j) {
          const MomentValue& mv = fresh[j - have];
          cache.c.push_back(mv.c);
          cache.err.push_back(mv.err);
        }
        out.c.assign(cache.c.begin(), cache.c.begin() + static_cast<std::ptrdiff_t>(n));
        out.error_estimate.assign(cache.err.begin(),
                                  cache.err.begin() + static_cast<std::ptrdiff_t>(n));
        merged = true;
      }
    }
    // A stricter request reset the cache while we computed; try again.
    if (merged) break;
  }
  if (!(out.c[0].real() > 0) || std::abs(out.c[0].imag()) > 1e-12 * out.c[0].real())
    throw NumericalError("compute_moments: c_0 is not a positive real number");
  out.normalized = std::abs(out.c[0].real() - 1.0) <= 1e-10;
  return out;
}

}  // namespace szego

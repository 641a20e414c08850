#include "szego/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "szego/errors.hpp"
#include "szego/moments.hpp"
#include "szego/parallel.hpp"

namespace szego {

namespace {

// Shared coefficient table for a sweep: one Levinson pass at the largest
// order serves every n.
std::shared_ptr<const VerblunskyCoefficients> sweep_coefficients(
    const CircleWeight& w, std::size_t max_n, KernelStrategy strategy,
    double moment_rel_tol) {
  const std::size_t coeffs =
      (strategy == KernelStrategy::cd_form) ? max_n : max_n - 1;
  MomentSequence m = compute_moments(w, coeffs + 1, moment_rel_tol);
  return std::make_shared<VerblunskyCoefficients>(levinson(m));
}

std::optional<double> loglog_slope(std::span<const double> xs,
                                   std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0)) return std::nullopt;
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0)) return std::nullopt;
  return sxy / sxx;
}

}  // namespace

RateTable rate_experiment(const CircleWeight& w, std::size_t N, std::size_t step,
                          const RateOptions& opt) {
  if (step < 1) throw InvalidArgument("rate_experiment: step must be >= 1");
  if (N == 0 || N % step != 0)
    throw InvalidArgument("rate_experiment: N must be a positive multiple of step");
  const std::size_t rows = N / step;
  if (rows < 3) throw InvalidArgument("rate_experiment: need at least 3 rows");

  auto v = sweep_coefficients(w, N, opt.strategy, opt.moment_rel_tol);

  RateTable table;
  table.weight = w.name();
  table.N = N;
  table.step = step;
  table.rows.resize(rows);
  parallel_for(rows, [&](std::size_t i) {
    const std::size_t n = (i + 1) * step;
    KernelContext ctx(v, n, opt.strategy);
    const double x = 1.0 - 1.0 / static_cast<double>(n);
    DeviationSample s = ctx.deviation(Complex(1, 0), Complex(x, 0), Complex(x, 0));
    table.rows[i] = RateRecord{n, x, s.deviation, std::nullopt, std::nullopt};
  });

  for (std::size_t i = 1; i < rows; ++i) {
    RateRecord& cur = table.rows[i];
    if (!(cur.D > 0)) continue;
    const double r = static_cast<double>(i + 1);  // 1-based row index n/step
    cur.alpha_cand = r * (table.rows[i - 1].D / cur.D - 1.0);
    cur.c_alpha_cand =
        cur.D * std::pow(static_cast<double>(cur.n), *cur.alpha_cand);
  }

  std::vector<double> tail_n, tail_D;
  for (const RateRecord& rec : table.rows)
    if (rec.n > N / 2) {
      tail_n.push_back(static_cast<double>(rec.n));
      tail_D.push_back(rec.D);
    }
  table.tail_slope = loglog_slope(tail_n, tail_D);
  return table;
}

Figure2Table figure2_data(const CircleWeight& w, double s, std::size_t N,
                          std::size_t step, const RateOptions& opt) {
  if (!(s > 0)) throw InvalidArgument("figure2_data: s must be > 0");
  RateTable rate = rate_experiment(w, N, step, opt);

  Figure2Table table;
  table.weight = rate.weight;
  table.s = s;
  table.N = N;
  table.step = step;
  table.tail_slope = rate.tail_slope;
  table.C = rate.rows.back().c_alpha_cand;
  table.rows.reserve(rate.rows.size());
  bool tail_ok = table.C.has_value();
  for (const RateRecord& rec : rate.rows) {
    Figure2Row row;
    row.n = rec.n;
    row.f1 = rec.D;
    if (table.C) {
      row.f2 = *table.C * std::pow(static_cast<double>(rec.n), -s);
      if (rec.n > N / 2 && !(row.f1 >= *row.f2 * (1.0 - 1e-6))) tail_ok = false;
    }
    table.rows.push_back(row);
  }
  table.tail_ok = tail_ok;
  return table;
}

PoissonCheckTable poisson_example_check(std::complex<double> lambda,
                                        std::span<const std::size_t> n_list,
                                        std::size_t grid_points) {
  if (n_list.empty()) throw InvalidArgument("poisson_example_check: empty n list");
  for (std::size_t n : n_list)
    if (n == 0) throw InvalidArgument("poisson_example_check: n must be >= 1");
  if (grid_points < 2)
    throw InvalidArgument("poisson_example_check: need at least 2 grid points");

  const CircleWeight w = CircleWeight::poisson(lambda);
  const std::size_t max_n = *std::max_element(n_list.begin(), n_list.end());
  auto v = sweep_coefficients(w, max_n, KernelStrategy::cd_form, 1e-12);

  PoissonCheckTable table;
  table.lambda = lambda;
  table.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t row) {
    const std::size_t n = n_list[row];
    KernelContext ctx(v, n, KernelStrategy::cd_form);
    const double diag = ctx.diagonal(Complex(1, 0));

    std::vector<KernelPoint> pts(grid_points);
    std::vector<Complex> zs(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double u = -1.0 + 2.0 * static_cast<double>(i) /
                                  static_cast<double>(grid_points - 1);
      zs[i] = Complex(std::exp(u / static_cast<double>(n)), 0);
      pts[i] = ctx.prepare(zs[i]);
    }
    double sup = 0;
    for (std::size_t i = 0; i < grid_points; ++i)
      for (std::size_t j = 0; j < grid_points; ++j) {
        const Complex ratio = ctx.kernel_from(pts[i], pts[j]) / diag;
        const Complex uni = universal_ratio(zs[i], zs[j], n);
        sup = std::max(sup, std::abs(ratio - uni));
      }
    table.rows[row] =
        PoissonCheckRow{n, sup, static_cast<double>(n) * sup};
  });

  double lo = table.rows[0].n_times_sup, hi = lo;
  bool all_positive = true;
  for (const PoissonCheckRow& r : table.rows) {
    if (!(r.sup_deviation > 0)) all_positive = false;
    lo = std::min(lo, r.n_times_sup);
    hi = std::max(hi, r.n_times_sup);
  }
  if (all_positive) table.band_ratio = hi / lo;
  return table;
}

Theorem1Report theorem1_check(const CircleWeight& w, std::complex<double> zeta,
                              double A, std::size_t n, double grid_density,
                              const RateOptions& opt) {
  if (!(A > 0)) throw InvalidArgument("theorem1_check: A must be > 0");
  if (n == 0) throw InvalidArgument("theorem1_check: n must be >= 1");
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12)
    throw InvalidArgument("theorem1_check: zeta must lie on the unit circle");
  if (!(grid_density > 0))
    throw InvalidArgument("theorem1_check: grid density must be > 0");
  const double delta = A / static_cast<double>(n);
  if (!(delta < 1))
    throw InvalidArgument("theorem1_check: A/n must be < 1");

  auto v = sweep_coefficients(w, n, KernelStrategy::cd_form, opt.moment_rel_tol);
  KernelContext ctx(v, n, KernelStrategy::cd_form);

  // Polar grid of the disk B(zeta, delta), plus its center.
  const auto radii = static_cast<std::size_t>(std::lround(17 * grid_density));
  const auto angles = static_cast<std::size_t>(std::lround(32 * grid_density));
  const std::size_t n_r = std::max<std::size_t>(radii, 2);
  const std::size_t n_a = std::max<std::size_t>(angles, 4);

  std::vector<Complex> zs;
  zs.reserve(1 + n_r * n_a);
  zs.push_back(zeta);
  for (std::size_t i = 1; i <= n_r; ++i) {
    const double r = delta * static_cast<double>(i) / static_cast<double>(n_r);
    for (std::size_t j = 0; j < n_a; ++j) {
      const double phi =
          2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_a);
      zs.push_back(zeta + Complex(r * std::cos(phi), r * std::sin(phi)));
    }
  }

  const std::size_t count = zs.size();
  std::vector<KernelPoint> pts(count);
  parallel_for(count, [&](std::size_t i) { pts[i] = ctx.prepare(zs[i]); });
  const double diag = ctx.diagonal(zeta);

  std::vector<double> row_max(count, 0.0);
  parallel_for(count, [&](std::size_t i) {
    double m = 0;
    for (std::size_t j = 0; j < count; ++j) {
      Complex ratio;
      if (zs[i] == zeta && zs[j] == zeta) {
        ratio = Complex(1, 0);
      } else {
        ratio = ctx.kernel_from(pts[i], pts[j]) / diag;
      }
      m = std::max(m, std::abs(ratio - universal_ratio(zs[i], zs[j], n)));
    }
    row_max[i] = m;
  });

  Theorem1Report rep;
  rep.weight = w.name();
  rep.zeta = zeta;
  rep.A = A;
  rep.n = n;
  rep.delta = delta;
  rep.lhs = *std::max_element(row_max.begin(), row_max.end());
  rep.entropy_sup = entropy_sup_on_radius(w, zeta, 1.0 - delta);
  rep.rhs_core = std::exp(4 * A) * std::sqrt(rep.entropy_sup);
  if (rep.rhs_core > 0) rep.empirical_ratio = rep.lhs / rep.rhs_core;
  return rep;
}

}  // namespace szego

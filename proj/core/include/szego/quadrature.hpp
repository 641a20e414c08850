#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <queue>
#include <vector>

#include "szego/errors.hpp"

namespace szego {

struct QuadratureOptions {
  double rel_tol = 1e-12;
  // Extra absolute floor on the error target; the engine always adds a
  // rounding floor proportional to the integral of |f|, so 0 is fine.
  double abs_tol = 0.0;
  // Panels are never wider than this. Oscillatory integrands pass the
  // envelope scale here (e.g. pi/(4(j+1)) for cos(j theta)).
  double max_panel_width = std::numeric_limits<double>::infinity();
  // Mandatory panel boundaries: singularities, kinks, peak refinement knots.
  std::vector<double> breakpoints;
  std::size_t max_panels = 400000;
};

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;  // absolute
  double abs_integral = 0;    // integral of |f|, used for the rounding floor
  std::size_t panels = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are symmetric; only the nonnegative half is stored.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
struct PanelEval {
  double integral;   // Kronrod value
  double error;      // |K15 - G7| based estimate
  double absint;     // Kronrod value for |f|
};

template <class F>
PanelEval<F> gk15(const F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  double resk = 0, resg = 0, resabs = 0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kGK15Nodes[i];
    double fv;
    if (i == 7) {
      fv = f(c);
      resk += kGK15WeightsK[7] * fv;
      resg += kGK15WeightsG[3] * fv;
      resabs += kGK15WeightsK[7] * std::abs(fv);
    } else {
      const double f1 = f(c - dx);
      const double f2 = f(c + dx);
      resk += kGK15WeightsK[i] * (f1 + f2);
      if (i % 2 == 1) resg += kGK15WeightsG[i / 2] * (f1 + f2);
      resabs += kGK15WeightsK[i] * (std::abs(f1) + std::abs(f2));
    }
  }
  double err = std::abs(resk - resg) * h;
  // Standard QUADPACK-style rescaling makes the estimate less optimistic on
  // rough integrands; keep the simple bound but never report exactly zero.
  err = std::max(err, std::abs(resk) * h * 1e-16);
  return {resk * h, err, resabs * h};
}

struct Panel {
  double a, b, value, error, absint;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive panel-based integration of f over [a, b] with a fixed high order
// rule (Gauss-Kronrod 7/15) per panel. Mandatory breakpoints and a maximum
// panel width seed the initial subdivision; the panel with the largest error
// estimate is bisected until the global estimate meets
//   max(rel_tol * |I|, abs_tol, rounding floor).
// Throws NumericalError if the panel budget is exhausted first.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    const QuadratureOptions& opt = {}) {
  if (!(a < b)) {
    if (a == b) return {0, 0, 0, 0};
    throw InvalidArgument("integrate_adaptive: requires a <= b");
  }

  std::vector<double> knots;
  knots.push_back(a);
  for (double x : opt.breakpoints)
    if (x > a && x < b) knots.push_back(x);
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::priority_queue<detail::Panel> heap;
  double total = 0, toterr = 0, totabs = 0;
  std::size_t panels = 0;

  auto push_panel = [&](double lo, double hi) {
    auto r = detail::gk15(f, lo, hi);
    heap.push({lo, hi, r.integral, r.error, r.absint});
    total += r.integral;
    toterr += r.error;
    totabs += r.absint;
    ++panels;
  };

  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double lo = knots[i], hi = knots[i + 1];
    if (hi - lo > opt.max_panel_width) {
      auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / opt.max_panel_width));
      if (panels + pieces > opt.max_panels)
        throw NumericalError("integrate_adaptive: panel budget exhausted by max_panel_width seeding");
      for (std::size_t k = 0; k < pieces; ++k) {
        double x0 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(pieces);
        double x1 = lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(pieces);
        push_panel(x0, x1);
      }
    } else {
      push_panel(lo, hi);
    }
  }

  // Panels split down to rounding resolution are frozen: their contribution
  // stays in the totals but they leave the refinement heap.
  double frozen_value = 0, frozen_err = 0, frozen_abs = 0;
  std::size_t frozen_panels = 0;

  auto target = [&] {
    double rounding = 50.0 * std::numeric_limits<double>::epsilon() * (totabs + frozen_abs);
    return std::max({opt.rel_tol * std::abs(total + frozen_value), opt.abs_tol, rounding});
  };

  auto freeze = [&](const detail::Panel& p) {
    total -= p.value;
    toterr -= p.error;
    totabs -= p.absint;
    --panels;
    frozen_value += p.value;
    frozen_err += p.error;
    frozen_abs += p.absint;
    ++frozen_panels;
  };

  while (toterr + frozen_err > target() && !heap.empty()) {
    if (panels + frozen_panels >= opt.max_panels) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "integrate_adaptive: no convergence within panel budget "
                    "(achieved estimate %.6g, target %.6g)",
                    toterr + frozen_err, target());
      throw NumericalError(msg);
    }
    detail::Panel worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      freeze(worst);
      continue;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    // Genuine resolution failures shrink fast under bisection (the local
    // truncation error scales like h^15). When splitting barely moves the
    // estimate and the panel is already below the global target, the estimate
    // is rounding noise and further refinement cannot reduce it.
    if (left.error + right.error >= 0.9 * worst.error && worst.error <= target()) {
      freeze(worst);
      continue;
    }
    total -= worst.value;
    toterr -= worst.error;
    totabs -= worst.absint;
    --panels;
    heap.push({worst.a, mid, left.integral, left.error, left.absint});
    heap.push({mid, worst.b, right.integral, right.error, right.absint});
    total += left.integral + right.integral;
    toterr += left.error + right.error;
    totabs += left.absint + right.absint;
    panels += 2;
  }

  // The incremental totals drift by one rounding per heap operation, which is
  // too much at tight tolerances; sum the surviving panels afresh.
  double value = frozen_value, err = frozen_err, absint = frozen_abs;
  std::size_t live = 0;
  while (!heap.empty()) {
    const detail::Panel& p = heap.top();
    value += p.value;
    err += p.error;
    absint += p.absint;
    ++live;
    heap.pop();
  }
  double rounding = 50.0 * std::numeric_limits<double>::epsilon() * absint;
  return {value, std::max(err, rounding), absint, live + frozen_panels};
}

}  // namespace szego

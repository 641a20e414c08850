#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace szego {

enum class WeightKind { lebesgue, poisson, holder, custom };

class MomentCache;

// A nonnegative weight w(theta) on the unit circle against normalized
// Lebesgue measure dm = dtheta/2pi. Angles are reduced mod 2pi into
// [-pi, pi), so evaluation is well defined for any real argument.
class CircleWeight {
 public:
  // w = 1.
  static CircleWeight lebesgue();

  // w(theta) = (1 - |lambda|^2) / |1 - lambda e^{i theta}|^2, |lambda| < 1.
  // A probability weight for every admissible lambda.
  static CircleWeight poisson(std::complex<double> lambda);

  // w(theta) = c * e^{|theta|^s} with s > 0. When normalized (the default)
  // c is computed by quadrature so that the weight integrates to 1 against dm.
  static CircleWeight holder(double s, bool normalized = true);

  // Arbitrary weight given by a callable. The callable receives an angle in
  // [-pi, pi). singular_points lists angles where w is not smooth.
  static CircleWeight custom(std::string name, std::function<double(double)> eval,
                             std::vector<double> singular_points, bool even,
                             bool normalized);

  // Piecewise-linear weight through (theta, w) samples; the approximation of
  // choice for weights loaded from files. Samples must cover [-pi, pi],
  // be strictly positive and given with increasing theta.
  static CircleWeight from_samples(std::string name, const std::vector<double>& theta,
                                   const std::vector<double>& values);

  double operator()(double theta) const;
  // log w. Built-in weights use the analytic logarithm (the exponent itself
  // for the holder family) instead of log(exp(...)), which matters for the
  // entropy integrals.
  double log_value(double theta) const;

  WeightKind kind() const;
  bool even() const;
  bool normalized() const;
  const std::vector<double>& singular_points() const;
  // Multiplicative constant already applied on top of the base shape.
  double normalization_constant() const;
  // Compact description, e.g. "poisson:0.5"; echoed into outputs.
  const std::string& name() const;

  std::complex<double> poisson_lambda() const;  // poisson kind only
  double holder_exponent() const;               // holder kind only

  // Same shape scaled by alpha > 0 (moments scale linearly with it).
  CircleWeight scaled(double alpha) const;

  MomentCache& moment_cache() const;

 private:
  struct Impl;
  explicit CircleWeight(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
  std::shared_ptr<MomentCache> cache_;
};

// Parses a weight spec string: "lebesgue", "poisson:<lambda>",
// "holder:<s>", or "file:<path>" (CSV of theta,w samples).
// Throws InvalidArgument on malformed specs or out-of-range parameters.
CircleWeight make_weight(const std::string& spec);

// Returns w scaled so that it integrates to 1 against dm; the constant is
// found by quadrature at tolerance rel_tol.
CircleWeight normalize_weight(const CircleWeight& w, double rel_tol = 1e-13);

}  // namespace szego

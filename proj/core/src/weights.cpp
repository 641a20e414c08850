#include "szego/weights.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "moment_cache.hpp"
#include "szego/errors.hpp"
#include "szego/quadrature.hpp"

namespace szego {

// Defined in csv.cpp (weight sample file loading).
CircleWeight load_weight_file(const std::string& path);

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  // reduce to [-pi, pi)
  if (theta >= -kPi && theta < kPi) return theta;
  double t = std::remainder(theta, 2 * kPi);
  if (t >= kPi) t -= 2 * kPi;
  if (t < -kPi) t += 2 * kPi;
  return t;
}
}  // namespace

struct CircleWeight::Impl {
  WeightKind kind = WeightKind::custom;
  std::string name;
  std::function<double(double)> eval;      // base shape, before scaling
  std::function<double(double)> log_eval;  // log of base shape, analytic where possible
  std::vector<double> singular_points;
  bool even = false;
  bool normalized = false;
  double scale = 1.0;  // multiplicative constant applied to the base shape
  std::complex<double> lambda{0, 0};
  double holder_s = 0;
};

CircleWeight::CircleWeight(std::shared_ptr<const Impl> impl)
    : impl_(std::move(impl)), cache_(std::make_shared<MomentCache>()) {}

double CircleWeight::operator()(double theta) const {
  return impl_->scale * impl_->eval(wrap_angle(theta));
}

double CircleWeight::log_value(double theta) const {
  return std::log(impl_->scale) + impl_->log_eval(wrap_angle(theta));
}

WeightKind CircleWeight::kind() const { return impl_->kind; }
bool CircleWeight::even() const { return impl_->even; }
bool CircleWeight::normalized() const { return impl_->normalized; }
const std::vector<double>& CircleWeight::singular_points() const {
  return impl_->singular_points;
}
double CircleWeight::normalization_constant() const { return impl_->scale; }
const std::string& CircleWeight::name() const { return impl_->name; }

std::complex<double> CircleWeight::poisson_lambda() const {
  if (impl_->kind != WeightKind::poisson)
    throw InvalidArgument("poisson_lambda: not a poisson weight");
  return impl_->lambda;
}

double CircleWeight::holder_exponent() const {
  if (impl_->kind != WeightKind::holder)
    throw InvalidArgument("holder_exponent: not a holder weight");
  return impl_->holder_s;
}

MomentCache& CircleWeight::moment_cache() const { return *cache_; }

CircleWeight CircleWeight::lebesgue() {
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::lebesgue;
  impl->name = "lebesgue";
  impl->eval = [](double) { return 1.0; };
  impl->log_eval = [](double) { return 0.0; };
  impl->even = true;
  impl->normalized = true;
  return CircleWeight(std::move(impl));
}

CircleWeight CircleWeight::poisson(std::complex<double> lambda) {
  if (!(std::abs(lambda) < 1.0))
    throw InvalidArgument("poisson weight: |lambda| must be < 1");
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::poisson;
  impl->lambda = lambda;
  {
    std::ostringstream os;
    os << "poisson:" << lambda.real();
    if (lambda.imag() != 0) os << (lambda.imag() > 0 ? "+" : "") << lambda.imag() << "i";
    impl->name = os.str();
  }
  const double one_minus = 1.0 - std::norm(lambda);
  impl->eval = [lambda, one_minus](double theta) {
    std::complex<double> xi(std::cos(theta), std::sin(theta));
    return one_minus / std::norm(1.0 - lambda * xi);
  };
  impl->log_eval = [lambda, one_minus](double theta) {
    std::complex<double> xi(std::cos(theta), std::sin(theta));
    return std::log(one_minus) - std::log(std::norm(1.0 - lambda * xi));
  };
  impl->even = (lambda.imag() == 0.0);
  impl->normalized = true;  // integrates to 1 in closed form
  return CircleWeight(std::move(impl));
}

CircleWeight CircleWeight::holder(double s, bool normalized) {
  if (!(s > 0))
    throw InvalidArgument("holder weight: exponent s must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::holder;
  impl->holder_s = s;
  {
    std::ostringstream os;
    os << "holder:" << s;
    if (!normalized) os << ":unnormalized";
    impl->name = os.str();
  }
  impl->eval = [s](double theta) { return std::exp(std::pow(std::abs(theta), s)); };
  impl->log_eval = [s](double theta) { return std::pow(std::abs(theta), s); };
  impl->singular_points = {0.0};
  impl->even = true;
  impl->normalized = normalized;
  if (normalized) {
    // scale = 1 / integral of the base shape against dm
    QuadratureOptions opt;
    opt.rel_tol = 1e-14;
    opt.breakpoints = {0.0};
    auto r = integrate_adaptive(impl->eval, -kPi, kPi, opt);
    impl->scale = 2 * kPi / r.value;
  }
  return CircleWeight(std::move(impl));
}

CircleWeight CircleWeight::custom(std::string name, std::function<double(double)> eval,
                                  std::vector<double> singular_points, bool even,
                                  bool normalized) {
  auto impl = std::make_shared<Impl>();
  impl->kind = WeightKind::custom;
  impl->name = std::move(name);
  auto base = std::move(eval);
  impl->log_eval = [base](double theta) { return std::log(base(theta)); };
  impl->eval = std::move(base);
  impl->singular_points = std::move(singular_points);
  std::sort(impl->singular_points.begin(), impl->singular_points.end());
  impl->even = even;
  impl->normalized = normalized;
  return CircleWeight(std::move(impl));
}

CircleWeight CircleWeight::from_samples(std::string name, const std::vector<double>& theta,
                                        const std::vector<double>& values) {
  if (theta.size() != values.size() || theta.size() < 2)
    throw InvalidArgument("weight samples: need at least 2 (theta, w) pairs");
  for (std::size_t i = 1; i < theta.size(); ++i)
    if (!(theta[i] > theta[i - 1]))
      throw InvalidArgument("weight samples: theta must be strictly increasing");
  if (theta.front() > -kPi + 1e-12 || theta.back() < kPi - 1e-12)
    throw InvalidArgument("weight samples: must cover [-pi, pi]");
  for (double v : values)
    if (!(v > 0) || !std::isfinite(v))
      throw InvalidArgument("weight samples: w must be strictly positive and finite");

  auto th = std::make_shared<std::vector<double>>(theta);
  auto vv = std::make_shared<std::vector<double>>(values);
  auto eval = [th, vv](double t) {
    auto it = std::upper_bound(th->begin(), th->end(), t);
    if (it == th->begin()) return vv->front();
    if (it == th->end()) return vv->back();
    std::size_t i = static_cast<std::size_t>(it - th->begin());
    double t0 = (*th)[i - 1], t1 = (*th)[i];
    double u = (t - t0) / (t1 - t0);
    return (1 - u) * (*vv)[i - 1] + u * (*vv)[i];
  };
  // every knot is a potential kink of the interpolant
  std::vector<double> kinks(theta.begin(), theta.end());
  return custom(std::move(name), std::move(eval), std::move(kinks),
                /*even=*/false, /*normalized=*/false);
}

CircleWeight CircleWeight::scaled(double alpha) const {
  if (!(alpha > 0)) throw InvalidArgument("scaled: alpha must be > 0");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->scale *= alpha;
  impl->normalized = false;
  impl->name = impl_->name + ":scaled";
  return CircleWeight(std::move(impl));
}

CircleWeight make_weight(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  auto parse_number = [&](const std::string& what) {
    try {
      std::size_t pos = 0;
      double v = std::stod(tail, &pos);
      if (pos != tail.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("weight spec '" + spec + "': cannot parse " + what);
    }
  };

  if (head == "lebesgue") {
    if (!tail.empty()) throw InvalidArgument("weight spec 'lebesgue' takes no parameter");
    return CircleWeight::lebesgue();
  }
  if (head == "poisson") return CircleWeight::poisson(parse_number("lambda"));
  if (head == "holder") return CircleWeight::holder(parse_number("s"));
  if (head == "file") {
    if (tail.empty()) throw InvalidArgument("weight spec 'file:' needs a path");
    return load_weight_file(tail);
  }
  throw InvalidArgument("unknown weight spec '" + spec +
                        "' (expected lebesgue | poisson:<lambda> | holder:<s> | file:<path>)");
}

CircleWeight normalize_weight(const CircleWeight& w, double rel_tol) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.breakpoints = w.singular_points();
  auto r = integrate_adaptive([&](double t) { return w(t); }, -kPi, kPi, opt);
  if (!(r.value > 0))
    throw NumericalError("normalize_weight: weight does not integrate to a positive value");
  return w.scaled(2 * kPi / r.value);
}

}  // namespace szego

#include "szego/opuc.hpp"

#include <cmath>
#include <string>

#include "szego/errors.hpp"

namespace szego {

namespace {

// Compensated (Kahan) accumulator for complex sums; the Levinson inner
// products are the one place in the recursion where cancellation can build up.
class KahanSum {
 public:
  void add(Complex x) {
    Complex y = x - comp_;
    Complex t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  Complex value() const { return sum_; }

 private:
  Complex sum_{0, 0};
  Complex comp_{0, 0};
};

}  // namespace

VerblunskyCoefficients levinson(const MomentSequence& m) {
  if (m.n == 0 || m.c.empty()) throw InvalidArgument("levinson: empty moment sequence");
  const double c0 = m.c[0].real();
  if (!(c0 > 0) || std::abs(m.c[0].imag()) > 1e-12 * c0)
    throw NumericalError("levinson: c_0 must be a positive real number");

  VerblunskyCoefficients out;
  out.c0 = c0;
  out.kappa.push_back(1.0 / std::sqrt(c0));
  if (m.n == 1) return out;

  const std::size_t mlen = m.n - 1;  // number of coefficients produced
  out.a.reserve(mlen);
  out.kappa.reserve(mlen + 1);

  // Monic polynomial Phi_k, coefficient index = power. E is the squared
  // prediction error norm ||Phi_k||^2 = c_0 * prod (1 - |a_i|^2).
  std::vector<Complex> Phi{Complex(1, 0)};
  double E = c0;
  for (std::size_t k = 0; k < mlen; ++k) {
    KahanSum s;
    // a_k = <z Phi_k, 1>-type inner product: sum_i conj(Phi[i]) c_{i+1} / E.
    for (std::size_t i = 0; i <= k; ++i) s.add(std::conj(Phi[i]) * m.c[i + 1]);
    const Complex a = s.value() / E;
    const double r = std::abs(a);
    if (!(r < 1.0 - 1e-13))
      throw NumericalError(
          "levinson: moment matrix is numerically singular at index " +
          std::to_string(k) + " (|a| = " + std::to_string(r) + ")");

    // Phi_{k+1} = z Phi_k - conj(a) Phi_k^*; Phi_k^* is the conjugated
    // reversal of Phi_k over degree k.
    std::vector<Complex> next(k + 2);
    next[0] = -std::conj(a) * std::conj(Phi[k]);
    for (std::size_t i = 1; i <= k; ++i)
      next[i] = Phi[i - 1] - std::conj(a) * std::conj(Phi[k - i]);
    next[k + 1] = Phi[k];
    Phi = std::move(next);

    E *= 1.0 - r * r;
    if (!(E > 0) || !std::isfinite(E))
      throw NumericalError("levinson: prediction error underflowed at index " +
                           std::to_string(k));
    out.a.push_back(a);
    out.kappa.push_back(1.0 / std::sqrt(E));
  }
  return out;
}

PolynomialPair szego_polynomials(const VerblunskyCoefficients& v, std::size_t n) {
  if (n > v.size())
    throw InvalidArgument("szego_polynomials: need " + std::to_string(n) +
                          " recurrence coefficients, have " + std::to_string(v.size()));
  if (n > 1024)
    throw InvalidArgument(
        "szego_polynomials: coefficient vectors are capped at degree 1024; "
        "use SzegoRecurrence for pointwise evaluation");

  PolynomialPair out;
  out.n = n;
  out.phi.reserve(n + 1);
  out.phi.push_back({Complex(v.kappa[0], 0)});
  std::vector<Complex> star{Complex(v.kappa[0], 0)};
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = v.a[k];
    const double norm = std::sqrt(1.0 - std::norm(a));
    const std::vector<Complex>& phi = out.phi[k];
    std::vector<Complex> phi_next(k + 2), star_next(k + 2);
    // phi_{k+1} = (z phi_k - conj(a) phi*_k) / norm
    phi_next[0] = -std::conj(a) * star[0] / norm;
    for (std::size_t i = 1; i <= k + 1; ++i)
      phi_next[i] = (phi[i - 1] - std::conj(a) * (i <= k ? star[i] : Complex(0))) / norm;
    // phi*_{k+1} = (phi*_k - a z phi_k) / norm
    star_next[0] = star[0] / norm;
    for (std::size_t i = 1; i <= k + 1; ++i)
      star_next[i] = ((i <= k ? star[i] : Complex(0)) - a * phi[i - 1]) / norm;
    out.phi.push_back(std::move(phi_next));
    star = std::move(star_next);
  }
  out.phi_star_n = std::move(star);
  return out;
}

Complex eval_poly(std::span<const Complex> coeffs, Complex z) {
  Complex acc{0, 0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

std::vector<Complex> reflect(std::span<const Complex> coeffs, std::size_t degree) {
  if (coeffs.size() > degree + 1)
    throw InvalidArgument("reflect: polynomial degree exceeds the stated degree");
  std::vector<Complex> out(degree + 1, Complex(0, 0));
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out[degree - i] = std::conj(coeffs[i]);
  return out;
}

SzegoRecurrence::SzegoRecurrence(const VerblunskyCoefficients& v, Complex z)
    : v_(&v), z_(z), phi_(v.kappa[0], 0), phi_star_(v.kappa[0], 0) {}

void SzegoRecurrence::advance() {
  if (k_ >= v_->size())
    throw InvalidArgument("SzegoRecurrence: advanced past the available coefficients");
  const Complex a = v_->a[k_];
  const double norm = std::sqrt(1.0 - std::norm(a));
  const Complex zphi = z_ * phi_;
  const Complex phi_next = (zphi - std::conj(a) * phi_star_) / norm;
  phi_star_ = (phi_star_ - a * zphi) / norm;
  phi_ = phi_next;
  ++k_;
}

}  // namespace szego

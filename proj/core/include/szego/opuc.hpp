#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "szego/moments.hpp"

namespace szego {

using Complex = std::complex<double>;

// Recurrence coefficients a_k of the orthonormal polynomials, all inside the
// open unit disk, plus the leading coefficients kappa_k:
//   kappa_0 = c_0^{-1/2},  kappa_{k+1} = kappa_k / sqrt(1 - |a_k|^2).
struct VerblunskyCoefficients {
  std::vector<Complex> a;      // a_0 .. a_{m-1}
  std::vector<double> kappa;   // kappa_0 .. kappa_m
  double c0 = 1.0;             // zeroth moment of the underlying measure
  std::size_t size() const { return a.size(); }
};

// Levinson recursion on the Hermitian Toeplitz moment matrix. From n moments
// c_0..c_{n-1} it produces a_0..a_{n-2}. Aborts with NumericalError if c_0 is
// not positive, some |a_k| reaches 1 - 1e-13 (matrix not positive definite;
// the message names the first failing index) or the norm recursion
// underflows. Inner products use compensated summation.
VerblunskyCoefficients levinson(const MomentSequence& m);

// phi_k and the reflected phi*_n as coefficient vectors (index = power).
// Materialized coefficients are a testing and export convenience and are
// capped at degree 1024; kernel evaluation at large n runs the recurrence
// pointwise instead and never builds these vectors.
struct PolynomialPair {
  std::size_t n = 0;
  std::vector<std::vector<Complex>> phi;  // phi_0 .. phi_n
  std::vector<Complex> phi_star_n;        // reflection of phi_n
};

PolynomialPair szego_polynomials(const VerblunskyCoefficients& v, std::size_t n);

// Horner evaluation.
Complex eval_poly(std::span<const Complex> coeffs, Complex z);

// Coefficient reflection p*(z) = z^degree * conj(p(1/conj(z))): reverse and
// conjugate, padding with zeros up to the stated degree.
std::vector<Complex> reflect(std::span<const Complex> coeffs, std::size_t degree);

// Runs the recurrence
//   phi_{k+1} = (z phi_k - conj(a_k) phi*_k) / sqrt(1 - |a_k|^2)
//   phi*_{k+1} = (phi*_k - a_k z phi_k) / sqrt(1 - |a_k|^2)
// at a fixed point z, in O(1) memory. Advancing past v.size() requires no
// further coefficients only in the trivial a = 0 tail sense and is therefore
// disallowed: callers must not advance more than v.size() times.
class SzegoRecurrence {
 public:
  SzegoRecurrence(const VerblunskyCoefficients& v, Complex z);
  void advance();
  Complex phi() const { return phi_; }
  Complex phi_star() const { return phi_star_; }
  std::size_t k() const { return k_; }
  Complex z() const { return z_; }

 private:
  const VerblunskyCoefficients* v_;
  Complex z_, phi_, phi_star_;
  std::size_t k_ = 0;
};

}  // namespace szego

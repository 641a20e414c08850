#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "support/frozen.hpp"
#include "szego/entropy.hpp"
#include "szego/errors.hpp"
#include "szego/weights.hpp"

using namespace szego;
using std::numbers::pi;

TEST_CASE("poisson integral reproduces harmonic functions") {
  // P[cos(k theta)](z) = Re z^k for |z| < 1
  const std::complex<double> z(0.6, -0.3);
  for (int k : {0, 1, 3}) {
    const double got =
        poisson_integral([&](double t) { return std::cos(k * t); }, z);
    CHECK(got == doctest::Approx(std::pow(z, k).real()).epsilon(1e-11));
  }
  const double gotsin = poisson_integral(
      [&](double t) { return std::sin(2 * t); }, z);
  CHECK(gotsin == doctest::Approx(std::pow(z, 2).imag()).epsilon(1e-10));
}

TEST_CASE("poisson integral near the boundary") {
  // constant function integrates to 1 even at 1 - |z| = 1e-7
  const std::complex<double> z(1.0 - 1e-7, 0.0);
  CHECK(poisson_integral([](double) { return 1.0; }, z) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(poisson_integral([](double) { return 1.0; }, {1.0, 0.0}),
                  InvalidArgument);
}

TEST_CASE("entropy closed form for the poisson weight") {
  // K(z) = log((1 - |lambda z|^2)/(1 - |lambda|^2))
  CHECK(entropy_at(CircleWeight::poisson({0.5, 0.0}), {0.8, 0.0}) ==
        doctest::Approx(frozen::kPoissonEntropy_05_08).epsilon(1e-13));
  CHECK(entropy_at(CircleWeight::poisson({0.9, 0.0}), {0.5, 0.0}) ==
        doctest::Approx(frozen::kPoissonEntropy_09_05).epsilon(1e-13));
  // invariance under |z| only is false in general; spot-check an off-axis z
  const std::complex<double> lam(0.3, 0.0), z(0.2, 0.5);
  const double want =
      std::log((1.0 - std::norm(lam * z)) / (1.0 - std::norm(lam)));
  CHECK(entropy_at(CircleWeight::poisson(lam), z) ==
        doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("entropy of lebesgue vanishes") {
  CHECK(std::abs(entropy_at(CircleWeight::lebesgue(), {0.3, 0.4})) < 1e-12);
}

TEST_CASE("entropy ladder for holder 0.4") {
  CircleWeight w = CircleWeight::holder(0.4);
  for (int i = 0; i < 8; ++i) {
    const double rho = 1.0 - 1.0 / frozen::kHolder04EntropyLadderN[i];
    CHECK(entropy_at(w, {rho, 0.0}) ==
          doctest::Approx(frozen::kHolder04EntropyLadder[i]).epsilon(1e-10));
  }
}

TEST_CASE("entropy profile grid") {
  CircleWeight w = CircleWeight::holder(0.4);
  auto p = entropy_profile(w, {1.0, 0.0}, 1e-3, 1e-1, 9);
  REQUIRE(p.rho.size() == 9);
  REQUIRE(p.K.size() == 9);
  CHECK(p.rho.front() == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(p.rho.back() == doctest::Approx(1.0 - 1e-3).epsilon(1e-12));
  for (std::size_t i = 1; i < 9; ++i) CHECK(p.rho[i] > p.rho[i - 1]);
  for (double k : p.K) CHECK(k > 0);
  // log-spaced in 1 - rho
  const double r0 = std::log((1 - p.rho[1]) / (1 - p.rho[0]));
  const double r1 = std::log((1 - p.rho[8]) / (1 - p.rho[7]));
  CHECK(r0 == doctest::Approx(r1).epsilon(1e-9));

  CHECK_THROWS_AS(entropy_profile(w, {1.0, 0.0}, 1e-1, 1e-3, 9), InvalidArgument);
  CHECK_THROWS_AS(entropy_profile(w, {1.0, 0.0}, 1e-3, 1e-1, 1), InvalidArgument);
  CHECK_THROWS_AS(entropy_profile(w, {0.5, 0.0}, 1e-3, 1e-1, 9), InvalidArgument);
}

TEST_CASE("entropy sup on radius") {
  CircleWeight w = CircleWeight::poisson({0.5, 0.0});
  // K is decreasing in rho for the poisson weight, so the sup over
  // [rho_min, 1) sits at rho_min.
  const double rho_min = 0.9;
  const double sup = entropy_sup_on_radius(w, {1.0, 0.0}, rho_min);
  const double at_min =
      std::log((1.0 - 0.25 * rho_min * rho_min) / (1.0 - 0.25));
  CHECK(sup == doctest::Approx(at_min).epsilon(1e-3));
  CHECK(sup >= at_min * (1 - 1e-9));
}

TEST_CASE("synthetic exponent fits recover exactly") {
  EntropyProfile p;
  p.zeta = {1.0, 0.0};
  const double C = 0.37, beta = 0.8;
  for (int i = 0; i < 16; ++i) {
    const double eps = std::pow(10.0, -4.0 + 3.0 * i / 15.0);
    p.rho.push_back(1 - eps);
    p.K.push_back(C * std::pow(eps, beta));
  }
  auto fit = fit_entropy_exponent(p, EntropyFitModel::plain);
  CHECK(fit.beta == doctest::Approx(beta).epsilon(1e-10));
  CHECK(fit.C == doctest::Approx(C).epsilon(1e-9));
  CHECK(fit.max_rel_residual < 1e-10);

  EntropyProfile q;
  q.zeta = {1.0, 0.0};
  for (int i = 0; i < 16; ++i) {
    const double eps = std::pow(10.0, -4.0 + 3.0 * i / 15.0);
    q.rho.push_back(1 - eps);
    q.K.push_back(C * std::pow(eps * std::abs(std::log(eps)), beta));
  }
  auto lfit = fit_entropy_exponent(q, EntropyFitModel::log_corrected);
  CHECK(lfit.beta == doctest::Approx(beta).epsilon(1e-10));
  CHECK(lfit.C == doctest::Approx(C).epsilon(1e-9));
  CHECK(lfit.max_rel_residual < 1e-10);
}

TEST_CASE("fit validation") {
  EntropyProfile p;
  p.zeta = {1.0, 0.0};
  for (int i = 0; i < 7; ++i) {  // too few points
    p.rho.push_back(1 - std::pow(10.0, -1.0 - i * 0.4));
    p.K.push_back(1.0);
  }
  CHECK_THROWS_AS(fit_entropy_exponent(p, EntropyFitModel::plain), InvalidArgument);

  EntropyProfile narrow;  // span below two decades
  narrow.zeta = {1.0, 0.0};
  for (int i = 0; i < 12; ++i) {
    narrow.rho.push_back(1 - std::pow(10.0, -1.0 - i * 0.05));
    narrow.K.push_back(std::pow(10.0, -i * 0.05));
  }
  CHECK_THROWS_AS(fit_entropy_exponent(narrow, EntropyFitModel::plain),
                  InvalidArgument);
}

#include <cmath>
#include <complex>

#include "doctest.h"
#include "szego/errors.hpp"
#include "szego/experiments.hpp"
#include "szego/weights.hpp"

using namespace szego;

TEST_CASE("rate table shape and companion columns") {
  CircleWeight w = CircleWeight::poisson({0.5, 0.0});
  auto t = rate_experiment(w, 80, 10);
  REQUIRE(t.rows.size() == 8);
  CHECK(t.N == 80);
  CHECK(t.step == 10);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].n == 10 * (i + 1));
    CHECK(t.rows[i].x_n == doctest::Approx(1.0 - 1.0 / t.rows[i].n).epsilon(1e-15));
    CHECK(t.rows[i].D >= 0);
  }
  // first row has no predecessor
  CHECK_FALSE(t.rows[0].alpha_cand.has_value());
  CHECK_FALSE(t.rows[0].c_alpha_cand.has_value());
  REQUIRE(t.rows[1].alpha_cand.has_value());
  // companion recurrence: alpha_cand(r) = r (D_{r-1}/D_r - 1), r 1-based
  const double want =
      2.0 * (t.rows[0].D / t.rows[1].D - 1.0);
  CHECK(*t.rows[1].alpha_cand == doctest::Approx(want).epsilon(1e-12));
  CHECK(*t.rows[1].c_alpha_cand ==
        doctest::Approx(t.rows[1].D * std::pow(20.0, want)).epsilon(1e-12));
  // poisson deviation decays ~ 1/n
  REQUIRE(t.tail_slope.has_value());
  CHECK(*t.tail_slope == doctest::Approx(-1.0).epsilon(0.1));
}

TEST_CASE("rate experiment validation") {
  CircleWeight w = CircleWeight::poisson({0.5, 0.0});
  CHECK_THROWS_AS(rate_experiment(w, 75, 10), InvalidArgument);  // N % step
  CHECK_THROWS_AS(rate_experiment(w, 20, 10), InvalidArgument);  // < 3 rows
  CHECK_THROWS_AS(rate_experiment(w, 80, 0), InvalidArgument);
}

TEST_CASE("repeated rate runs are identical") {
  CircleWeight w = CircleWeight::holder(0.4);
  auto a = rate_experiment(w, 60, 10);
  auto b = rate_experiment(w, 60, 10);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].D == b.rows[i].D);  // bitwise
    CHECK(a.rows[i].alpha_cand == b.rows[i].alpha_cand);
  }
}

TEST_CASE("figure2 ties f2 to the final candidate constant") {
  CircleWeight w = CircleWeight::holder(0.4);
  auto t = figure2_data(w, 0.4, 120, 20);
  REQUIRE(t.rows.size() == 6);
  REQUIRE(t.C.has_value());
  for (const auto& row : t.rows) {
    REQUIRE(row.f2.has_value());
    CHECK(*row.f2 ==
          doctest::Approx(*t.C * std::pow(double(row.n), -0.4)).epsilon(1e-12));
    CHECK(row.f1 >= 0);
  }
  CHECK_THROWS_AS(figure2_data(w, 0.0, 120, 20), InvalidArgument);
  CHECK_THROWS_AS(figure2_data(w, -0.4, 120, 20), InvalidArgument);
}

TEST_CASE("poisson example check stays on a narrow band") {
  const std::size_t ns[] = {40, 80};
  auto t = poisson_example_check({0.5, 0.0}, ns, 9);
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) {
    CHECK(r.sup_deviation > 0);
    CHECK(r.n_times_sup == doctest::Approx(r.sup_deviation * r.n).epsilon(1e-15));
    // sup over |u|,|v| <= 1 of the scaled deviation is O(1/n)
    CHECK(r.n_times_sup < 10.0);
  }
  REQUIRE(t.band_ratio.has_value());
  CHECK(*t.band_ratio >= 1.0);
  CHECK(*t.band_ratio < 2.0);
  CHECK_THROWS_AS(poisson_example_check({1.5, 0.0}, ns, 9), InvalidArgument);
  const std::vector<std::size_t> empty;
  CHECK_THROWS_AS(poisson_example_check({0.5, 0.0}, empty, 9), InvalidArgument);
}

TEST_CASE("comparison bound report") {
  CircleWeight w = CircleWeight::holder(0.4);
  auto r = theorem1_check(w, {1.0, 0.0}, 1.0, 64, 0.25);
  CHECK(r.n == 64);
  CHECK(r.delta == doctest::Approx(1.0 / 64).epsilon(1e-15));
  CHECK(r.lhs > 0);
  CHECK(r.entropy_sup > 0);
  CHECK(r.rhs_core ==
        doctest::Approx(std::exp(4.0) * std::sqrt(r.entropy_sup)).epsilon(1e-12));
  REQUIRE(r.empirical_ratio.has_value());
  CHECK(*r.empirical_ratio == doctest::Approx(r.lhs / r.rhs_core).epsilon(1e-12));

  CHECK_THROWS_AS(theorem1_check(w, {1.0, 0.0}, 0.0, 64), InvalidArgument);
  CHECK_THROWS_AS(theorem1_check(w, {1.0, 0.0}, 65.0, 64), InvalidArgument);
  CHECK_THROWS_AS(theorem1_check(w, {0.5, 0.0}, 1.0, 64), InvalidArgument);
}

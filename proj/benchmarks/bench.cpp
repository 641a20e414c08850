#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <memory>

#include "szego/entropy.hpp"
#include "szego/kernels.hpp"
#include "szego/moments.hpp"
#include "szego/opuc.hpp"
#include "szego/quadrature.hpp"
#include "szego/weights.hpp"

using namespace szego;

namespace {

MomentSequence poisson_moments(double lam, std::size_t n) {
  MomentSequence m;
  m.n = n;
  m.normalized = true;
  double p = 1;
  for (std::size_t j = 0; j < n; ++j) {
    m.c.emplace_back(p, 0.0);
    m.error_estimate.push_back(0.0);
    p *= lam;
  }
  return m;
}

void BM_Levinson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto m = poisson_moments(0.5, n);
  for (auto _ : state) benchmark::DoNotOptimize(levinson(m));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_Levinson)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_KernelPair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto v = std::make_shared<VerblunskyCoefficients>(
      levinson(poisson_moments(0.5, n + 2)));
  const bool cd = state.range(1) != 0;
  KernelContext ctx(v, n, cd ? KernelStrategy::cd_form : KernelStrategy::sum_form);
  const Complex z1(1.0 + 0.2 / n, 0.3 / n), z2(1.0 - 0.1 / n, -0.4 / n);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.kernel(z1, z2));
}
BENCHMARK(BM_KernelPair)
    ->ArgsProduct({{256, 1024, 4096}, {0, 1}})
    ->ArgNames({"n", "cd"});

void BM_PreparedPairs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto v = std::make_shared<VerblunskyCoefficients>(
      levinson(poisson_moments(0.5, n + 2)));
  KernelContext ctx(v, n, KernelStrategy::cd_form);
  const KernelPoint p1 = ctx.prepare({1.0 + 0.2 / n, 0.3 / n});
  const KernelPoint p2 = ctx.prepare({1.0 - 0.1 / n, -0.4 / n});
  for (auto _ : state) benchmark::DoNotOptimize(ctx.kernel_from(p1, p2));
}
BENCHMARK(BM_PreparedPairs)->Arg(1024)->Arg(4096);

void BM_MomentQuadrature(benchmark::State& state) {
  CircleWeight w = CircleWeight::holder(0.4);
  const double j = static_cast<double>(state.range(0));
  QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  opt.max_panel_width = M_PI / (4 * (j + 1));
  for (auto _ : state) {
    auto r = integrate_adaptive(
        [&](double t) { return std::cos(j * t) * w(t); }, 0, M_PI, opt);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_MomentQuadrature)->Arg(16)->Arg(128)->Arg(1024);

void BM_EntropyAt(benchmark::State& state) {
  CircleWeight w = CircleWeight::holder(0.4);
  const double rho = 1.0 - std::pow(10.0, -double(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(entropy_at(w, {rho, 0.0}));
}
BENCHMARK(BM_EntropyAt)->Arg(2)->Arg(4)->Arg(6)->ArgNames({"decades"});

}  // namespace

BENCHMARK_MAIN();

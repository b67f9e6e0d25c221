#include "oqf/ct.hpp"
#include "oqf/fourier.hpp"
#include "oqf/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace oqf;

namespace {

std::vector<double> gaussian_samples(int n) {
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = -1.0 + 2.0 * k / n;
    x[static_cast<std::size_t>(k)] = std::exp(-t * t / (2 * 0.15 * 0.15));
  }
  return x;
}

void BM_Coefficients(benchmark::State& state) {
  QuadratureSpec s;
  s.m = static_cast<int>(state.range(0));
  s.n = static_cast<int>(state.range(1));
  s.omega = 2.7;
  for (auto _ : state)
    benchmark::DoNotOptimize(coefficients(s));
}
BENCHMARK(BM_Coefficients)->ArgsProduct({{1, 2, 3}, {64, 512, 4096}});

void BM_ForwardPlanApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ForwardPlan plan(-1.0, 1.0, n, 0.25 * n, n, 2);
  const auto x = gaussian_samples(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(plan.apply(std::span<const double>(x)));
}
BENCHMARK(BM_ForwardPlanApply)->Arg(128)->Arg(512);

void BM_InverseEvaluateMany(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double w = 0.25 * n;
  const ForwardPlan fwd(-1.0, 1.0, n, w, n, 2, true);
  const auto x = gaussian_samples(n);
  const InversePlan inv(w, n, 2, InversePlan::Band::Half);
  const auto prepared = inv.prepare(fwd.apply(std::span<const double>(x)));
  std::vector<double> ts(static_cast<std::size_t>(n)), re(ts.size());
  for (int k = 0; k < n; ++k)
    ts[static_cast<std::size_t>(k)] = -1.0 + (2.0 * k + 1.0) / n;
  for (auto _ : state) {
    inv.evaluate_many(prepared, ts, re, {});
    benchmark::DoNotOptimize(re.data());
  }
}
BENCHMARK(BM_InverseEvaluateMany)->Arg(128)->Arg(512);

void BM_DftRampFilter(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DftRampFilter filter(n + 1, 2.0 / n);
  const auto x = gaussian_samples(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(filter.apply(x));
}
BENCHMARK(BM_DftRampFilter)->Arg(128)->Arg(512);

void BM_Reconstruct(benchmark::State& state) {
  const auto sino = make_sinogram(EllipsePhantom::shepp_logan(), 64, 64);
  ReconstructionOptions o;
  o.method = state.range(0) == 0 ? Method::DftBaseline : Method::Oqf;
  o.image_size = 64;
  for (auto _ : state)
    benchmark::DoNotOptimize(fbp_reconstruct(sino, o));
}
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

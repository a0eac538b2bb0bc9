#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "vfp/collision.hpp"
#include "vfp/driver.hpp"
#include "vfp/rkc.hpp"
#include "vfp/transport.hpp"

using namespace vfp;

namespace {

std::vector<double> bimodal(const VelocityGrid& g) {
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double v = g.node(j);
    f[j] = std::exp(-(v - 1) * (v - 1)) + 0.3 * std::exp(-(v + 2) * (v + 2) / 0.5);
  }
  return f;
}

void BM_Q2Apply(benchmark::State& st) {
  const VelocityGrid g(10.0, static_cast<int>(st.range(0)));
  const auto f = bimodal(g);
  std::vector<double> out(f.size());
  for (auto _ : st) {
    q2_apply(f, g, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Q2Apply)->Arg(128)->Arg(512)->Arg(2048);

void BM_Q4Apply(benchmark::State& st) {
  const VelocityGrid g(10.0, static_cast<int>(st.range(0)));
  const auto f = bimodal(g);
  std::vector<double> out(f.size());
  CollisionWorkspace ws;
  for (auto _ : st) {
    q4_apply(f, g, out, 0.0, ws);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Q4Apply)->Arg(128)->Arg(512)->Arg(2048);

void BM_RkcStep(benchmark::State& st) {
  const VelocityGrid g(10.0, 512);
  const auto y0 = bimodal(g);
  const RkcCoeffs c = rkc2_coeffs(static_cast<int>(st.range(0)));
  const Rhs rhs = [&](double, std::span<const double> y, std::span<double> out) { q2_apply(y, g, out); };
  std::vector<double> y1(y0.size());
  RkcWorkspace ws;
  for (auto _ : st) {
    benchmark::DoNotOptimize(rkc_step(c, y0, 0.0, 0.01, rhs, y1, ws));
  }
}
BENCHMARK(BM_RkcStep)->Arg(5)->Arg(20)->Arg(80);

void BM_AdvectX(benchmark::State& st) {
  const PhaseGrid g = build_phase_grid(4 * std::numbers::pi, static_cast<int>(st.range(0)), 8.0, 256, 1);
  DistState f = sample_on_grid(g, [](double x, double v, double) {
    return (1 + 0.01 * std::cos(0.5 * x)) * std::exp(-v * v / 2);
  });
  const SpectralPlan plan(g);
  for (auto _ : st) {
    advect_x(f, 0.1, plan);
    benchmark::DoNotOptimize(f.values.data());
  }
}
BENCHMARK(BM_AdvectX)->Arg(32)->Arg(128);

void BM_SplitStep(benchmark::State& st) {
  Scenario sc = builtin_scenario("bump-2beam");
  sc.nx = 32;
  sc.nv = 256;
  sc.splitting = st.range(0) == 0 ? Splitting::SlRkc : Splitting::SlRk2Rkc;
  StepContext ctx(sc);
  const DistState f0 = sample_on_grid(ctx.grid(), sc.initializer());
  for (auto _ : st) {
    st.PauseTiming();
    DistState f = f0;
    FieldState e = poisson_field(f, ctx.plan());
    st.ResumeTiming();
    const SubstepInfo info = sc.splitting == Splitting::SlRkc ? step_sl_rkc(ctx, f, e, 0.5, true)
                                                              : step_sl_rk2_rkc(ctx, f, e, 0.5, true);
    benchmark::DoNotOptimize(info.err);
  }
  st.SetLabel(sc.splitting == Splitting::SlRkc ? "sl-rkc" : "sl-rk2-rkc");
}
BENCHMARK(BM_SplitStep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "gim/analysis.hpp"

namespace {

gim::CurveSequence bench_curve(const gim::ManifoldKind& kind, long n) {
  gim::Rng rng(42);
  gim::CurveSequence c{{}, gim::Boundary::periodic};
  const gim::ManifoldPoint center = gim::random_point(kind, rng);
  for (long i = 0; i < n; ++i) {
    const bool compact = kind.tag() == gim::ManifoldTag::sphere || kind.tag() == gim::ManifoldTag::rotations3d;
    c.points.push_back(compact ? gim::exp_map(center, 0.15 * gim::random_unit_tangent(center, rng))
                               : gim::random_point(kind, rng));
  }
  return c;
}

void BM_RefineOnce(benchmark::State& state, bool parallel, gim::ManifoldKind kind, const char* scheme_name) {
  const gim::GimScheme scheme = gim::builtin(scheme_name);
  const gim::CurveSequence curve = bench_curve(kind, state.range(0));
  for (auto _ : state) {
    auto out = parallel ? gim::refine_once(scheme, curve) : gim::serial::refine_once(scheme, curve);
    benchmark::DoNotOptimize(out.points.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_ContractivityProbe(benchmark::State& state, bool parallel, gim::ManifoldKind kind) {
  const gim::GimScheme scheme = gim::builtin("sixpoint_dd");
  const gim::ProbeOptions opts{static_cast<int>(state.range(0)), 7};
  for (auto _ : state) {
    auto r = parallel ? gim::contractivity_probe(scheme, kind, opts) : gim::serial::contractivity_probe(scheme, kind, opts);
    benchmark::DoNotOptimize(r.max_ratio);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_RefineOnce, spd3_sixpoint_serial, false, gim::ManifoldKind::spd(3), "sixpoint_dd")
    ->Arg(1024)->Arg(8192);
BENCHMARK_CAPTURE(BM_RefineOnce, spd3_sixpoint_omp, true, gim::ManifoldKind::spd(3), "sixpoint_dd")
    ->Arg(1024)->Arg(8192);
BENCHMARK_CAPTURE(BM_RefineOnce, sphere3_bspline4_serial, false, gim::ManifoldKind::sphere(3), "bspline4")
    ->Arg(8192)->Arg(65536);
BENCHMARK_CAPTURE(BM_RefineOnce, sphere3_bspline4_omp, true, gim::ManifoldKind::sphere(3), "bspline4")
    ->Arg(8192)->Arg(65536);
BENCHMARK_CAPTURE(BM_ContractivityProbe, rotations_serial, false, gim::ManifoldKind::rotations3d())->Arg(200);
BENCHMARK_CAPTURE(BM_ContractivityProbe, rotations_omp, true, gim::ManifoldKind::rotations3d())->Arg(200);

BENCHMARK_MAIN();

#include "kkit/slice.hpp"
#include "kkit/waction.hpp"

#include <benchmark/benchmark.h>

using namespace kkit;

static void BM_build_f4(benchmark::State& state) {
  RootDatum rd = build_root_datum("SC(F4)");
  for (auto _ : state) benchmark::DoNotOptimize(build_chevalley_algebra(rd));
}
BENCHMARK(BM_build_f4);

static void BM_regularity_sample_f4(benchmark::State& state) {
  ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(F4)"));
  Slice slice = integral_complement(alg);
  FieldModel model = make_field_model(alg, 7);
  ConditionProfile profile = condition_check(alg.datum, 7);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularity_audit(model, slice, 1, seed++, profile));
  }
}
BENCHMARK(BM_regularity_sample_f4);

static void BM_twisted_action_g2(benchmark::State& state) {
  ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum("SC(G2)"));
  TwistedModule module = make_twisted_module(alg, 7, 6);
  VPoly f = basis_function(module, 3, mono_pack({3, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(twisted_action(module, 0, f));
}
BENCHMARK(BM_twisted_action_g2);

#include "kkit/chevalley.hpp"
#include "kkit/matrix.hpp"
#include "kkit/smith.hpp"

#include <benchmark/benchmark.h>

using namespace kkit;

namespace {

IntMatrix random_int_matrix(std::size_t n, long span, std::uint64_t seed) {
  SplitMix64 rng(seed);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = Int(static_cast<long>(rng.below(2 * span + 1)) - span);
  return m;
}

// the realistic SNF workload: sparse graded components of ad(e)
std::vector<IntMatrix> springer_matrices(const char* spec) {
  ChevalleyAlgebra alg = build_chevalley_algebra(build_root_datum(spec));
  std::vector<IntMatrix> out;
  for (const auto& [deg, basis] : alg.graded) out.push_back(springer_map(alg, deg));
  return out;
}

} // namespace

static void BM_smith_springer_f4(benchmark::State& state) {
  std::vector<IntMatrix> mats = springer_matrices("SC(F4)");
  for (auto _ : state)
    for (const IntMatrix& m : mats) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_smith_springer_f4);

static void BM_smith_small_dense(benchmark::State& state) {
  IntMatrix m = random_int_matrix(static_cast<std::size_t>(state.range(0)), 3, 42);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_smith_small_dense)->Arg(6)->Arg(10);

static void BM_rank_fp(benchmark::State& state) {
  GF f(31);
  IntMatrix m = random_int_matrix(static_cast<std::size_t>(state.range(0)), 15, 7);
  FpMatrix r = reduce_mod(m, f);
  for (auto _ : state) benchmark::DoNotOptimize(rank_fp(r, f));
}
BENCHMARK(BM_rank_fp)->Arg(28)->Arg(52);

static void BM_det_bareiss(benchmark::State& state) {
  IntMatrix m = random_int_matrix(static_cast<std::size_t>(state.range(0)), 9, 21);
  for (auto _ : state) benchmark::DoNotOptimize(det_bareiss(m));
}
BENCHMARK(BM_det_bareiss)->Arg(16)->Arg(32);

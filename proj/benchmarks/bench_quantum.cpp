#include "chucoal/quantum.hpp"
#include "chucoal/random.hpp"

#include <benchmark/benchmark.h>

using namespace chucoal;

static void BM_BornValue(benchmark::State& state) {
  Rng rng(41);
  int dim = int(state.range(0));
  StateVector psi = random_state(rng, dim);
  Subspace s = Subspace::ray(random_state(rng, dim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(born(psi, s));
  }
}
BENCHMARK(BM_BornValue)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_MaterializeClosure(benchmark::State& state) {
  Rng rng(43);
  int dim = int(state.range(0));
  std::vector<StateVector> seeds{random_state(rng, dim),
                                 random_state(rng, dim)};
  auto questions = discriminating_questions(seeds, dim);
  HilbertSystem system = make_hilbert_system(dim, seeds, questions);
  for (auto _ : state) {
    benchmark::DoNotOptimize(materialize(quantum_coalgebra(system), seeds, 2,
                                         ray_equal_options(1e-7)));
  }
}
BENCHMARK(BM_MaterializeClosure)->Arg(2)->Arg(3)->Arg(4);

static void BM_WignerReconstruct(benchmark::State& state) {
  Rng rng(47);
  int dim = int(state.range(0));
  Semiunitary v = random_semiunitary(rng, dim);
  auto map = [&](const StateVector& p) { return v.apply(p); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_reconstruct(map, dim));
  }
}
BENCHMARK(BM_WignerReconstruct)->Arg(3)->Arg(5)->Arg(8);

BENCHMARK_MAIN();

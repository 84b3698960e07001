#include "chucoal/bisimulation.hpp"
#include "chucoal/random.hpp"
#include "chucoal/unfold.hpp"

#include <benchmark/benchmark.h>

using namespace chucoal;

namespace {

FiniteCoalgebra make_system(std::size_t states, std::size_t questions,
                            std::uint64_t seed) {
  Rng rng(seed);
  RandomCoalgebraOptions opts;
  opts.min_states = states;
  opts.max_states = states;
  opts.max_denominator = 3;
  for (std::size_t q = 0; q < questions; ++q) {
    opts.questions.push_back("q" + std::to_string(q));
  }
  return random_coalgebra(rng, opts);
}

}  // namespace

static void BM_PartitionRefinement(benchmark::State& state) {
  FiniteCoalgebra a = make_system(std::size_t(state.range(0)), 4, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_auto_bisimulation(a));
  }
}
BENCHMARK(BM_PartitionRefinement)->Arg(8)->Arg(32)->Arg(128)->Arg(512);

static void BM_CrossBisimulation(benchmark::State& state) {
  FiniteCoalgebra a = make_system(std::size_t(state.range(0)), 4, 19);
  FiniteCoalgebra b = make_system(std::size_t(state.range(0)), 4, 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(largest_bisimulation(a, b));
  }
}
BENCHMARK(BM_CrossBisimulation)->Arg(8)->Arg(64)->Arg(256);

static void BM_Quotient(benchmark::State& state) {
  FiniteCoalgebra a = make_system(std::size_t(state.range(0)), 4, 29);
  for (auto _ : state) {
    benchmark::DoNotOptimize(strongly_extensional_quotient(a));
  }
}
BENCHMARK(BM_Quotient)->Arg(32)->Arg(256);

static void BM_UnfoldStabilizationDepth(benchmark::State& state) {
  FiniteCoalgebra a = make_system(16, 3, 31);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        unfold(a, a.states().front(), int(state.range(0))));
  }
}
BENCHMARK(BM_UnfoldStabilizationDepth)->Arg(8)->Arg(32)->Arg(128);

BENCHMARK_MAIN();

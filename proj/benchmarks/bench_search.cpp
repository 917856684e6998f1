// Sigma signatures, structure enumeration and the strong-reality solvers.

#include <benchmark/benchmark.h>

#include <random>

#include "beauville/beauville.hpp"
#include "beauville/families.hpp"
#include "beauville/strongreal.hpp"

using namespace beauville;

namespace {

void BM_SigmaSet(benchmark::State& state) {
  auto G = construct(TriangleQuotient{static_cast<unsigned>(state.range(0))});
  auto pairs = generating_pairs(G);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(sigma(G, p.x, p.y).size());
  }
}
BENCHMARK(BM_SigmaSet)->Arg(2)->Arg(3);

void BM_SigmaSignature(benchmark::State& state) {
  auto G = construct(TriangleQuotient{static_cast<unsigned>(state.range(0))});
  auto pairs = generating_pairs(G);
  SigmaIndex index(G);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(index.of(p.x, p.y));
  }
}
BENCHMARK(BM_SigmaSignature)->Arg(2)->Arg(3);

void BM_EnumerateStructures(benchmark::State& state) {
  auto G = construct(TriangleQuotient{2});
  for (auto _ : state) {
    auto n = enumerate_beauville_structures(G, [](const BeauvilleStructure&) {});
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateStructures)->Unit(benchmark::kMillisecond);

void BM_FindStructure(benchmark::State& state) {
  auto G = construct(Metacyclic{5, 2, 1});
  for (auto _ : state) benchmark::DoNotOptimize(find_beauville_structure(G).found);
}
BENCHMARK(BM_FindStructure)->Unit(benchmark::kMillisecond);

void BM_TheoremBSolve(benchmark::State& state) {
  auto G = construct(TriangleQuotient{static_cast<unsigned>(state.range(0))});
  auto pairs = generating_pairs(G);
  SigmaIndex index(G);
  std::mt19937_64 rng(3);
  std::vector<BeauvilleStructure> sample;
  while (sample.size() < 64) {
    auto p1 = pairs[rng() % pairs.size()], p2 = pairs[rng() % pairs.size()];
    if (index.disjoint(index.of(p1.x, p1.y), index.of(p2.x, p2.y))) sample.push_back({p1, p2});
  }
  TheoremBSolver solver(G);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(sample[i++ % sample.size()]).witness.g2);
}
BENCHMARK(BM_TheoremBSolve)->Arg(2)->Arg(3);

void BM_InversionWitnessScan(benchmark::State& state) {
  auto G = construct(TriangleQuotient{static_cast<unsigned>(state.range(0))});
  auto theta = *inversion_automorphism(G);
  theta.materialize(G);
  auto pairs = generating_pairs(G);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(inversion_witness(G, theta, p.x, p.y));
  }
}
BENCHMARK(BM_InversionWitnessScan)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();

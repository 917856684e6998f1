// Group arithmetic: collection against table lookup, and table construction.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "beauville/families.hpp"

using namespace beauville;

namespace {

const GroupTable& triangle(unsigned e) {
  static std::vector<std::unique_ptr<GroupTable>> cache(8);
  if (!cache[e]) cache[e] = std::make_unique<GroupTable>(construct(TriangleQuotient{e}));
  return *cache[e];
}

void BM_MultiplyByCollection(benchmark::State& state) {
  const auto& G = triangle(static_cast<unsigned>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<Element> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(G.unrank(rng() % G.order()));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G.multiply_by_collection(xs[i & 255], xs[(i + 7) & 255]));
    ++i;
  }
}
BENCHMARK(BM_MultiplyByCollection)->Arg(2)->Arg(3)->Arg(4);

void BM_MultiplyByTable(benchmark::State& state) {
  const auto& G = triangle(static_cast<unsigned>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<Rank> xs;
  for (int i = 0; i < 256; ++i) xs.push_back(rng() % G.order());
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(G.mul(xs[i & 255], xs[(i + 7) & 255]));
    ++i;
  }
}
BENCHMARK(BM_MultiplyByTable)->Arg(2)->Arg(3)->Arg(4);

void BM_BuildTriangleQuotient(benchmark::State& state) {
  const auto e = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(construct(TriangleQuotient{e}).order());
}
BENCHMARK(BM_BuildTriangleQuotient)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BuildMetacyclic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(construct(Metacyclic{5, 2, 1}).order());
}
BENCHMARK(BM_BuildMetacyclic)->Unit(benchmark::kMillisecond);

void BM_ClassIds(benchmark::State& state) {
  for (auto _ : state) {
    auto G = construct(TriangleQuotient{static_cast<unsigned>(state.range(0))});
    benchmark::DoNotOptimize(G.num_classes());
  }
}
BENCHMARK(BM_ClassIds)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "freelink/bracket.hpp"
#include "freelink/invariant.hpp"
#include "freelink/moves.hpp"

namespace {

using namespace freelink;

// Links with `pairs` pairs of mixed crossings spread over n circles.
Diagram good_link(std::size_t n, std::size_t pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Diagram d = unlink(n);
  std::size_t next = 1;
  for (std::size_t p = 0; p < pairs; ++p) {
    std::size_t i = rng() % n;
    std::size_t j = (i + 1 + rng() % (n - 1)) % n;
    for (int twice = 0; twice < 2; ++twice) {
      const std::string c = "c" + std::to_string(next++);
      for (auto k : {i, j}) {
        auto& passes = d.components[k].passes;
        passes.insert(passes.begin() + static_cast<std::ptrdiff_t>(rng() % (passes.size() + 1)), c);
      }
    }
  }
  return d;
}

// One circle whose crossings are all pure.
Diagram pure_knot(std::size_t crossings, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Diagram d = unlink(1);
  auto& passes = d.components[0].passes;
  for (std::size_t k = 1; k <= crossings; ++k)
    for (int twice = 0; twice < 2; ++twice)
      passes.insert(passes.begin() + static_cast<std::ptrdiff_t>(rng() % (passes.size() + 1)), "c" + std::to_string(k));
  return d;
}

void BM_CanonicalForm(benchmark::State& state) {
  auto d = good_link(static_cast<std::size_t>(state.range(0)), 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_key(d));
}
BENCHMARK(BM_CanonicalForm)->Arg(2)->Arg(4)->Arg(6);

void BM_Bracket(benchmark::State& state) {
  auto d = pure_knot(static_cast<std::size_t>(state.range(0)), 2);
  BracketOptions opts;
  opts.jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(bracket(d, opts));
}
BENCHMARK(BM_Bracket)->Args({8, 1})->Args({12, 1})->Args({12, 4})->Unit(benchmark::kMillisecond);

void BM_Fingerprint(benchmark::State& state) {
  auto d = good_link(static_cast<std::size_t>(state.range(0)), 12, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fingerprint(d));
}
BENCHMARK(BM_Fingerprint)->Arg(3)->Arg(5)->Arg(8);

void BM_Search(benchmark::State& state) {
  auto d = good_link(3, 3, 4);
  WalkOptions walk;
  walk.forbid_pure = true;
  auto target = random_walk(d, static_cast<std::size_t>(state.range(0)), 5, walk).final;
  SearchOptions opts;
  opts.forbid_pure = true;
  for (auto _ : state)
    benchmark::DoNotOptimize(bounded_equivalence_search(d, target, static_cast<std::size_t>(state.range(0)), opts));
}
BENCHMARK(BM_Search)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

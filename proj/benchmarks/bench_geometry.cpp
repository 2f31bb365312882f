#include <benchmark/benchmark.h>

#include "espush/geometry.hpp"
#include "espush/rng.hpp"

using namespace espush;

namespace {

std::vector<std::pair<Obb2, Obb2>> box_pairs(int n) {
  Rng rng(7);
  std::vector<std::pair<Obb2, Obb2>> pairs;
  pairs.reserve(n);
  for (int k = 0; k < n; ++k) {
    const auto box = [&rng] {
      return Obb2{{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)},
                  rng.uniform(0.01, 0.04),
                  rng.uniform(0.01, 0.04),
                  rng.uniform(-3.14, 3.14)};
    };
    pairs.emplace_back(box(), box());
  }
  return pairs;
}

}  // namespace

static void BM_ObbOverlapMtv(benchmark::State& state) {
  const auto pairs = box_pairs(1024);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[k++ & 1023];
    benchmark::DoNotOptimize(obb_overlap_mtv(a, b));
  }
}
BENCHMARK(BM_ObbOverlapMtv);

static void BM_ObbSeparationDistance(benchmark::State& state) {
  const auto pairs = box_pairs(1024);
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& [a, b] = pairs[k++ & 1023];
    benchmark::DoNotOptimize(obb_separation_distance(a, b));
  }
}
BENCHMARK(BM_ObbSeparationDistance);

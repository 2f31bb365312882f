#include <benchmark/benchmark.h>

#include "espush/push_sim.hpp"
#include "espush/scene.hpp"

using namespace espush;

static void BM_ExecutePush(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 11);
  const Vec2 c = sc.target()->footprint.center;
  const PushSegment seg{{c.x - 0.08, c.y}, {c.x + 0.02, c.y}, 0.012};
  const SimConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(execute_push(sc, seg, cfg));
}
BENCHMARK(BM_ExecutePush);

static void BM_ExecutePushFine(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 11);
  const Vec2 c = sc.target()->footprint.center;
  const PushSegment seg{{c.x - 0.08, c.y}, {c.x + 0.02, c.y}, 0.012};
  SimConfig cfg;
  cfg.substep = 0.0005;
  for (auto _ : state) benchmark::DoNotOptimize(execute_push(sc, seg, cfg));
}
BENCHMARK(BM_ExecutePushFine);

#include <benchmark/benchmark.h>

#include "espush/maps.hpp"
#include "espush/percept.hpp"
#include "espush/scene.hpp"

using namespace espush;

static void BM_RenderVisualState(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(render_visual_state(sc));
}
BENCHMARK(BM_RenderVisualState);

static void BM_EmptySpaceMap(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 3);
  const VisualGrid v = render_visual_state(sc);
  for (auto _ : state) benchmark::DoNotOptimize(empty_space_map(v));
}
BENCHMARK(BM_EmptySpaceMap);

static void BM_ObstacleDistanceMap(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 3);
  const VisualGrid v = render_visual_state(sc);
  const Contour c = extract_contour(v);
  for (auto _ : state)
    benchmark::DoNotOptimize(obstacle_distance_map(c, v.values.side()));
}
BENCHMARK(BM_ObstacleDistanceMap);

static void BM_LocalEmptySpaceMap(benchmark::State& state) {
  const Scene sc = generate_scene(SceneGenConfig{}, 3);
  const VisualGrid v = render_visual_state(sc);
  const DistanceMap esm = empty_space_map(v);
  for (auto _ : state)
    benchmark::DoNotOptimize(local_empty_space_map(esm, 64, 64));
}
BENCHMARK(BM_LocalEmptySpaceMap);

#include <benchmark/benchmark.h>

#include "espush/mlp.hpp"
#include "espush/percept.hpp"

using namespace espush;

namespace {

Mlp paper_actor() {
  Rng rng(1);
  return make_mlp({kActorObsDim, 512, 512, 512, 2}, OutputHead::kTanh, rng);
}

std::vector<double> fixture_input(int n) {
  Rng rng(2);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(0.0, 1.0);
  return x;
}

}  // namespace

static void BM_MlpForward512(benchmark::State& state) {
  const Mlp net = paper_actor();
  const auto x = fixture_input(net.input_dim());
  for (auto _ : state) benchmark::DoNotOptimize(mlp_forward(net, x));
}
BENCHMARK(BM_MlpForward512);

static void BM_MlpForwardBackward512(benchmark::State& state) {
  const Mlp net = paper_actor();
  const auto x = fixture_input(net.input_dim());
  const std::vector<double> dy{1.0, -0.5};
  Gradients grads = make_zero_gradients(net);
  for (auto _ : state) {
    ForwardCache cache;
    benchmark::DoNotOptimize(mlp_forward(net, x, &cache));
    mlp_backward(net, cache, dy, grads);
    benchmark::DoNotOptimize(grads);
  }
}
BENCHMARK(BM_MlpForwardBackward512);

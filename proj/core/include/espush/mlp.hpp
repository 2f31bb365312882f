#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "espush/rng.hpp"

namespace espush {

enum class OutputHead { kLinear, kTanh };

// Dense network with rectifier hidden units and explicit parameter storage.
// weights[l] has shape sizes[l+1] x sizes[l] (row-major); biases[l] has
// sizes[l+1] entries.
struct Mlp {
  std::vector<int> sizes;  // input, hidden..., output
  OutputHead head = OutputHead::kLinear;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  int input_dim() const { return sizes.front(); }
  int output_dim() const { return sizes.back(); }
  int n_layers() const { return static_cast<int>(sizes.size()) - 1; }
};

// Uniform +-1/sqrt(fan_in) init, biases zero.
Mlp make_mlp(const std::vector<int>& sizes, OutputHead head, Rng& rng);

struct ForwardCache {
  // act[0] is the input; act[l+1] = activation of layer l; pre[l] = affine
  // output of layer l before its nonlinearity
  std::vector<std::vector<double>> pre;
  std::vector<std::vector<double>> act;
};

// Affine + rectifier per hidden layer; the head applies tanh per component
// or stays linear. Pass a cache to enable backprop.
std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x,
                                ForwardCache* cache = nullptr);

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
  std::vector<double> input;  // dLoss/dx
};

Gradients make_zero_gradients(const Mlp& net);

// Exact reverse-mode gradients for the loss whose dLoss/dy is given. The
// rectifier uses subgradient 0 at exactly 0. Accumulates into `acc`.
void mlp_backward(const Mlp& net, const ForwardCache& cache,
                  std::span<const double> dloss_dy, Gradients& acc);
Gradients mlp_backward(const Mlp& net, const ForwardCache& cache,
                       std::span<const double> dloss_dy);

void scale_gradients(Gradients& g, double k);

// Standard Adam with bias correction on a flat parameter vector.
struct AdamParams {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

void adam_step(std::span<double> params, std::span<const double> grads,
               std::span<double> m, std::span<double> v, std::int64_t t,
               double lr, const AdamParams& ap = {});

struct AdamState {
  std::vector<std::vector<double>> m_w, v_w, m_b, v_b;
  std::int64_t t = 0;
  AdamParams params;
};

AdamState make_adam_state(const Mlp& net);
void adam_update(Mlp& net, const Gradients& g, AdamState& st, double lr);

// target <- polyak * target + (1 - polyak) * online
void polyak_update(Mlp& target, const Mlp& online, double polyak);

// Binary model file: layer sizes, head, raw little-endian parameters and a
// free-form config echo string.
void save_mlp(const Mlp& net, const std::string& path,
              const std::string& config_echo = {});
Mlp load_mlp(const std::string& path, std::string* config_echo = nullptr);

}  // namespace espush

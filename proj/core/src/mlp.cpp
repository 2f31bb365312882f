#include "espush/mlp.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace espush {

Mlp make_mlp(const std::vector<int>& sizes, OutputHead head, Rng& rng) {
  if (sizes.size() < 2) throw std::invalid_argument("mlp needs >= 2 layers");
  Mlp net;
  net.sizes = sizes;
  net.head = head;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::vector<double> w(static_cast<std::size_t>(fan_out) * fan_in);
    for (double& x : w) x = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(fan_out, 0.0);
  }
  return net;
}

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x,
                                ForwardCache* cache) {
  if (static_cast<int>(x.size()) != net.input_dim())
    throw std::invalid_argument("mlp_forward: input dim mismatch");

  std::vector<double> cur(x.begin(), x.end());
  if (cache != nullptr) {
    cache->pre.assign(net.n_layers(), {});
    cache->act.assign(net.n_layers() + 1, {});
    cache->act[0] = cur;
  }

  for (int l = 0; l < net.n_layers(); ++l) {
    const int n_in = net.sizes[l];
    const int n_out = net.sizes[l + 1];
    const std::vector<double>& w = net.weights[l];
    std::vector<double> z(net.biases[l]);
    for (int r = 0; r < n_out; ++r) {
      const double* wr = &w[static_cast<std::size_t>(r) * n_in];
      double acc = 0.0;
      for (int c = 0; c < n_in; ++c) acc += wr[c] * cur[c];
      z[r] += acc;
    }
    if (cache != nullptr) cache->pre[l] = z;

    const bool last = l == net.n_layers() - 1;
    if (!last) {
      for (double& v : z) v = v > 0.0 ? v : 0.0;
    } else if (net.head == OutputHead::kTanh) {
      for (double& v : z) v = std::tanh(v);
    }
    cur = std::move(z);
    if (cache != nullptr) cache->act[l + 1] = cur;
  }
  return cur;
}

Gradients make_zero_gradients(const Mlp& net) {
  Gradients g;
  for (int l = 0; l < net.n_layers(); ++l) {
    g.weights.emplace_back(net.weights[l].size(), 0.0);
    g.biases.emplace_back(net.biases[l].size(), 0.0);
  }
  g.input.assign(net.input_dim(), 0.0);
  return g;
}

void mlp_backward(const Mlp& net, const ForwardCache& cache,
                  std::span<const double> dloss_dy, Gradients& acc) {
  const int L = net.n_layers();
  if (static_cast<int>(dloss_dy.size()) != net.output_dim())
    throw std::invalid_argument("mlp_backward: output dim mismatch");

  std::vector<double> delta(dloss_dy.begin(), dloss_dy.end());
  // head nonlinearity
  if (net.head == OutputHead::kTanh) {
    const std::vector<double>& y = cache.act[L];
    for (std::size_t i = 0; i < delta.size(); ++i)
      delta[i] *= 1.0 - y[i] * y[i];
  }

  for (int l = L - 1; l >= 0; --l) {
    const int n_in = net.sizes[l];
    const int n_out = net.sizes[l + 1];
    const std::vector<double>& a_in = cache.act[l];
    std::vector<double>& gw = acc.weights[l];
    std::vector<double>& gb = acc.biases[l];
    for (int r = 0; r < n_out; ++r) {
      const double d = delta[r];
      gb[r] += d;
      double* gwr = &gw[static_cast<std::size_t>(r) * n_in];
      for (int c = 0; c < n_in; ++c) gwr[c] += d * a_in[c];
    }
    // propagate to the layer below
    std::vector<double> prev(n_in, 0.0);
    const std::vector<double>& w = net.weights[l];
    for (int r = 0; r < n_out; ++r) {
      const double d = delta[r];
      const double* wr = &w[static_cast<std::size_t>(r) * n_in];
      for (int c = 0; c < n_in; ++c) prev[c] += d * wr[c];
    }
    if (l > 0) {
      const std::vector<double>& pre = cache.pre[l - 1];
      for (int c = 0; c < n_in; ++c)
        if (pre[c] <= 0.0) prev[c] = 0.0;  // rectifier subgradient 0 at 0
    }
    delta = std::move(prev);
  }
  for (std::size_t i = 0; i < delta.size(); ++i) acc.input[i] += delta[i];
}

Gradients mlp_backward(const Mlp& net, const ForwardCache& cache,
                       std::span<const double> dloss_dy) {
  Gradients g = make_zero_gradients(net);
  mlp_backward(net, cache, dloss_dy, g);
  return g;
}

void scale_gradients(Gradients& g, double k) {
  for (auto& w : g.weights)
    for (double& x : w) x *= k;
  for (auto& b : g.biases)
    for (double& x : b) x *= k;
  for (double& x : g.input) x *= k;
}

void adam_step(std::span<double> params, std::span<const double> grads,
               std::span<double> m, std::span<double> v, std::int64_t t,
               double lr, const AdamParams& ap) {
  const double bc1 = 1.0 - std::pow(ap.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(ap.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m[i] = ap.beta1 * m[i] + (1.0 - ap.beta1) * grads[i];
    v[i] = ap.beta2 * v[i] + (1.0 - ap.beta2) * grads[i] * grads[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + ap.eps);
  }
}

AdamState make_adam_state(const Mlp& net) {
  AdamState st;
  for (int l = 0; l < net.n_layers(); ++l) {
    st.m_w.emplace_back(net.weights[l].size(), 0.0);
    st.v_w.emplace_back(net.weights[l].size(), 0.0);
    st.m_b.emplace_back(net.biases[l].size(), 0.0);
    st.v_b.emplace_back(net.biases[l].size(), 0.0);
  }
  return st;
}

void adam_update(Mlp& net, const Gradients& g, AdamState& st, double lr) {
  ++st.t;
  for (int l = 0; l < net.n_layers(); ++l) {
    adam_step(net.weights[l], g.weights[l], st.m_w[l], st.v_w[l], st.t, lr,
              st.params);
    adam_step(net.biases[l], g.biases[l], st.m_b[l], st.v_b[l], st.t, lr,
              st.params);
  }
}

void polyak_update(Mlp& target, const Mlp& online, double polyak) {
  for (int l = 0; l < target.n_layers(); ++l) {
    for (std::size_t i = 0; i < target.weights[l].size(); ++i) {
      target.weights[l][i] =
          polyak * target.weights[l][i] + (1.0 - polyak) * online.weights[l][i];
    }
    for (std::size_t i = 0; i < target.biases[l].size(); ++i) {
      target.biases[l][i] =
          polyak * target.biases[l][i] + (1.0 - polyak) * online.biases[l][i];
    }
  }
}

namespace {

constexpr char kMagic[8] = {'E', 'S', 'P', 'M', 'L', 'P', '0', '1'};

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("model file truncated");
  return v;
}

}  // namespace

void save_mlp(const Mlp& net, const std::string& path,
              const std::string& config_echo) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic, sizeof(kMagic));
  write_raw(out, static_cast<std::uint32_t>(net.sizes.size()));
  for (int s : net.sizes) write_raw(out, static_cast<std::uint32_t>(s));
  write_raw(out, static_cast<std::uint8_t>(net.head));
  write_raw(out, static_cast<std::uint32_t>(config_echo.size()));
  out.write(config_echo.data(),
            static_cast<std::streamsize>(config_echo.size()));
  for (int l = 0; l < net.n_layers(); ++l) {
    out.write(reinterpret_cast<const char*>(net.weights[l].data()),
              static_cast<std::streamsize>(net.weights[l].size() *
                                           sizeof(double)));
    out.write(reinterpret_cast<const char*>(net.biases[l].data()),
              static_cast<std::streamsize>(net.biases[l].size() *
                                           sizeof(double)));
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Mlp load_mlp(const std::string& path, std::string* config_echo) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error(path + ": not a model file");

  Mlp net;
  const auto n_sizes = read_raw<std::uint32_t>(in);
  if (n_sizes < 2 || n_sizes > 64)
    throw std::runtime_error(path + ": corrupt layer count");
  for (std::uint32_t i = 0; i < n_sizes; ++i)
    net.sizes.push_back(static_cast<int>(read_raw<std::uint32_t>(in)));
  net.head = static_cast<OutputHead>(read_raw<std::uint8_t>(in));
  const auto echo_len = read_raw<std::uint32_t>(in);
  std::string echo(echo_len, '\0');
  in.read(echo.data(), echo_len);
  if (config_echo != nullptr) *config_echo = echo;

  for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
    const std::size_t wn =
        static_cast<std::size_t>(net.sizes[l + 1]) * net.sizes[l];
    std::vector<double> w(wn), b(net.sizes[l + 1]);
    in.read(reinterpret_cast<char*>(w.data()),
            static_cast<std::streamsize>(wn * sizeof(double)));
    in.read(reinterpret_cast<char*>(b.data()),
            static_cast<std::streamsize>(b.size() * sizeof(double)));
    if (!in) throw std::runtime_error(path + ": truncated parameters");
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  return net;
}

}  // namespace espush

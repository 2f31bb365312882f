#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "espush/mlp.hpp"
#include "oracles.hpp"

using namespace espush;

namespace {

std::vector<double> random_vec(Rng& rng, int n, double lo = -1, double hi = 1) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

// full finite-difference sweep over every parameter of a small net
void check_gradients_everywhere(Mlp& net, const std::vector<double>& x,
                                double h, double tol) {
  ForwardCache cache;
  const std::vector<double> y = mlp_forward(net, x, &cache);
  // scalar loss: sum of outputs
  const std::vector<double> dy(y.size(), 1.0);
  const Gradients g = mlp_backward(net, cache, dy);

  const auto loss_at = [&] {
    const std::vector<double> out = mlp_forward(net, x);
    double s = 0.0;
    for (double v : out) s += v;
    return s;
  };

  for (int l = 0; l < net.n_layers(); ++l) {
    for (std::size_t k = 0; k < net.weights[l].size(); ++k) {
      const double keep = net.weights[l][k];
      net.weights[l][k] = keep + h;
      const double up = loss_at();
      net.weights[l][k] = keep - h;
      const double dn = loss_at();
      net.weights[l][k] = keep;
      const double fd = (up - dn) / (2 * h);
      const double an = g.weights[l][k];
      CHECK(std::abs(fd - an) <=
            tol * std::max({1.0, std::abs(fd), std::abs(an)}));
    }
    for (std::size_t k = 0; k < net.biases[l].size(); ++k) {
      const double keep = net.biases[l][k];
      net.biases[l][k] = keep + h;
      const double up = loss_at();
      net.biases[l][k] = keep - h;
      const double dn = loss_at();
      net.biases[l][k] = keep;
      const double fd = (up - dn) / (2 * h);
      CHECK(std::abs(fd - g.biases[l][k]) <=
            tol * std::max({1.0, std::abs(fd), std::abs(g.biases[l][k])}));
    }
  }
  // input gradient too
  std::vector<double> xv = x;
  for (std::size_t k = 0; k < xv.size(); ++k) {
    const double keep = xv[k];
    xv[k] = keep + h;
    const std::vector<double> up = mlp_forward(net, xv);
    xv[k] = keep - h;
    const std::vector<double> dn = mlp_forward(net, xv);
    xv[k] = keep;
    double fu = 0.0, fdn = 0.0;
    for (double v : up) fu += v;
    for (double v : dn) fdn += v;
    const double fd = (fu - fdn) / (2 * h);
    CHECK(std::abs(fd - g.input[k]) <=
          tol * std::max({1.0, std::abs(fd), std::abs(g.input[k])}));
  }
}

}  // namespace

TEST_CASE("mlp_forward: zero parameters give zero output") {
  Rng rng(1);
  Mlp net = make_mlp({4, 6, 3}, OutputHead::kLinear, rng);
  for (auto& w : net.weights) std::fill(w.begin(), w.end(), 0.0);
  for (auto& b : net.biases) std::fill(b.begin(), b.end(), 0.0);
  const auto y = mlp_forward(net, std::vector<double>{1, -2, 3, 4});
  for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("mlp_forward: identity single layer passes the input through") {
  Rng rng(1);
  Mlp net = make_mlp({3, 3}, OutputHead::kLinear, rng);
  std::fill(net.weights[0].begin(), net.weights[0].end(), 0.0);
  for (int k = 0; k < 3; ++k) net.weights[0][k * 3 + k] = 1.0;
  const std::vector<double> x{0.3, -0.8, 2.5};
  const auto y = mlp_forward(net, x);
  for (int k = 0; k < 3; ++k) CHECK(y[k] == x[k]);
}

TEST_CASE("mlp_forward: dimension mismatch throws") {
  Rng rng(1);
  const Mlp net = make_mlp({4, 6, 3}, OutputHead::kLinear, rng);
  CHECK_THROWS_AS(mlp_forward(net, std::vector<double>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("mlp_forward matches the loop re-implementation") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const OutputHead head =
        trial % 2 == 0 ? OutputHead::kTanh : OutputHead::kLinear;
    const Mlp net = make_mlp({7, 11, 9, 4}, head, rng);
    const std::vector<double> x = random_vec(rng, 7, -2, 2);
    const auto fast = mlp_forward(net, x);
    const auto slow = test::loop_mlp_forward(net, x);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k)
      CHECK(std::abs(fast[k] - slow[k]) < 1e-12);
  }
}

TEST_CASE("mlp_backward: linear scalar net has the textbook gradient") {
  Rng rng(3);
  Mlp net = make_mlp({4, 1}, OutputHead::kLinear, rng);
  const std::vector<double> x{0.5, -1.5, 2.0, 0.25};
  ForwardCache cache;
  mlp_forward(net, x, &cache);
  const double dy[1] = {1.0};
  const Gradients g = mlp_backward(net, cache, dy);
  for (int k = 0; k < 4; ++k) {
    CHECK(g.weights[0][k] == x[k]);  // dL/dW = x
    CHECK(g.input[k] == net.weights[0][k]);
  }
  CHECK(g.biases[0][0] == 1.0);
}

TEST_CASE("mlp_backward matches central finite differences everywhere") {
  Rng rng(23);
  Mlp tanh_net = make_mlp({5, 8, 8, 2}, OutputHead::kTanh, rng);
  check_gradients_everywhere(tanh_net, random_vec(rng, 5), 1e-5, 1e-4);
  Mlp lin_net = make_mlp({6, 10, 1}, OutputHead::kLinear, rng);
  check_gradients_everywhere(lin_net, random_vec(rng, 6), 1e-5, 1e-4);
}

TEST_CASE("mlp_backward: rectifier at exactly zero uses subgradient zero") {
  Rng rng(4);
  Mlp net = make_mlp({1, 1, 1}, OutputHead::kLinear, rng);
  net.weights[0][0] = 1.0;
  net.biases[0][0] = 0.0;  // pre-activation is exactly 0 for x = 0
  net.weights[1][0] = 3.0;
  ForwardCache cache;
  mlp_forward(net, std::vector<double>{0.0}, &cache);
  const double dy[1] = {1.0};
  const Gradients g = mlp_backward(net, cache, dy);
  CHECK(g.input[0] == 0.0);
  CHECK(g.weights[0][0] == 0.0);
}

TEST_CASE("adam_step: zero gradient leaves parameters unchanged") {
  std::vector<double> p{0.4, -0.7}, g{0.0, 0.0}, m(2, 0.0), v(2, 0.0);
  adam_step(p, g, m, v, 1, 1e-3);
  CHECK(p[0] == 0.4);
  CHECK(p[1] == -0.7);
}

TEST_CASE("adam_step: first step moves by roughly lr in the gradient sign") {
  std::vector<double> p{1.0}, g{42.0}, m(1, 0.0), v(1, 0.0);
  adam_step(p, g, m, v, 1, 1e-3);
  CHECK(p[0] < 1.0);
  CHECK(std::abs((1.0 - p[0]) - 1e-3) < 1e-6);  // |step| ~ lr for t = 1
}

TEST_CASE("adam_step: converges on a 1-D quadratic") {
  // minimize (p - 3)^2
  std::vector<double> p{-4.0}, m(1, 0.0), v(1, 0.0);
  for (int t = 1; t <= 1000; ++t) {
    std::vector<double> g{2.0 * (p[0] - 3.0)};
    adam_step(p, g, m, v, t, 0.05);
  }
  CHECK(std::abs(p[0] - 3.0) < 1e-3);
}

TEST_CASE("polyak_update: equal nets stay fixed, convex path reaches online") {
  Rng rng(12);
  const Mlp online = make_mlp({3, 5, 2}, OutputHead::kTanh, rng);
  Mlp target = online;
  polyak_update(target, online, 0.999);
  for (int l = 0; l < online.n_layers(); ++l)
    for (std::size_t k = 0; k < online.weights[l].size(); ++k)
      CHECK(target.weights[l][k] == online.weights[l][k]);

  Mlp far = make_mlp({3, 5, 2}, OutputHead::kTanh, rng);
  for (int it = 0; it < 20000; ++it) polyak_update(far, online, 0.999);
  for (int l = 0; l < online.n_layers(); ++l)
    for (std::size_t k = 0; k < online.weights[l].size(); ++k)
      CHECK(std::abs(far.weights[l][k] - online.weights[l][k]) < 1e-6);
}

TEST_CASE("model file round-trip is exact") {
  Rng rng(9);
  const Mlp net = make_mlp({6, 12, 12, 3}, OutputHead::kTanh, rng);
  const std::string path =
      (std::filesystem::temp_directory_path() / "espush_model.bin").string();
  save_mlp(net, path, "{\"note\":\"fixture\"}");
  std::string echo;
  const Mlp back = load_mlp(path, &echo);
  CHECK(echo == "{\"note\":\"fixture\"}");
  CHECK(back.sizes == net.sizes);
  CHECK(back.head == net.head);
  for (int l = 0; l < net.n_layers(); ++l) {
    CHECK(back.weights[l] == net.weights[l]);
    CHECK(back.biases[l] == net.biases[l]);
  }
  std::filesystem::remove(path);
}

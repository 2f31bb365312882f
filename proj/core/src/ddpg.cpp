#include "espush/ddpg.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace espush {

DdpgConfig DdpgConfig::paper() { return DdpgConfig{}; }

DdpgConfig DdpgConfig::desk() {
  DdpgConfig cfg;
  cfg.hidden_units = 64;
  cfg.epochs = 20;
  cfg.buffer_size = 5000;
  return cfg;
}

double reconstruct_reward(const Transition& tr, RewardScheme scheme,
                          int t_max) {
  if (tr.outcome == Outcome::kFellOff) return -1.0;
  if (tr.outcome == Outcome::kSingulated) return 1.0;
  const double e = scheme == RewardScheme::kEsShaped    ? tr.e_es
                   : scheme == RewardScheme::kLesShaped ? tr.e_les
                                                        : 0.0;
  return step_reward(scheme, t_max, e);
}

namespace {

std::vector<int> layer_sizes(int input, int output, const DdpgConfig& cfg) {
  std::vector<int> sizes{input};
  for (int l = 0; l < cfg.n_hidden; ++l) sizes.push_back(cfg.hidden_units);
  sizes.push_back(output);
  return sizes;
}

// deterministic Fisher-Yates
void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const auto j =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(i) - 1));
    std::swap(idx[i - 1], idx[j]);
  }
}

std::vector<double> to_double(const std::vector<float>& v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace

TrainResult ddpg_train(const ReplayBuffer& buffer, const DdpgConfig& cfg,
                       RewardScheme scheme) {
  if (buffer.items.empty()) throw std::invalid_argument("empty replay buffer");

  Rng rng(cfg.seed);
  TrainResult result;
  result.actor =
      make_mlp(layer_sizes(buffer.actor_dim, 2, cfg), OutputHead::kTanh, rng);
  result.critic = make_mlp(layer_sizes(buffer.state_dim + 2, 1, cfg),
                           OutputHead::kLinear, rng);
  Mlp actor_target = result.actor;
  Mlp critic_target = result.critic;

  AdamState actor_opt = make_adam_state(result.actor);
  AdamState critic_opt = make_adam_state(result.critic);

  const std::size_t n = buffer.items.size();
  const std::size_t batches = n / static_cast<std::size_t>(cfg.batch);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  std::vector<double> critic_in(static_cast<std::size_t>(buffer.state_dim) + 2);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle_indices(order, rng);
    double critic_loss_sum = 0.0;
    double actor_loss_sum = 0.0;

    for (std::size_t b = 0; b < batches; ++b) {
      const std::size_t* batch_idx = &order[b * cfg.batch];
      const double inv_batch = 1.0 / cfg.batch;

      // critic: mean squared TD error against the target networks
      Gradients critic_grad = make_zero_gradients(result.critic);
      double batch_critic_loss = 0.0;
      for (int s = 0; s < cfg.batch; ++s) {
        const Transition& tr = buffer.items[batch_idx[s]];
        const double r = reconstruct_reward(tr, scheme, buffer.t_max);
        double y = r;
        if (!tr.done) {
          const std::vector<double> next_obs = to_double(tr.next_actor_obs);
          const std::vector<double> na = mlp_forward(actor_target, next_obs);
          for (int k = 0; k < buffer.state_dim; ++k)
            critic_in[k] = tr.next_full_state[k];
          critic_in[buffer.state_dim] = na[0];
          critic_in[buffer.state_dim + 1] = na[1];
          y += cfg.gamma * mlp_forward(critic_target, critic_in)[0];
        }
        for (int k = 0; k < buffer.state_dim; ++k)
          critic_in[k] = tr.full_state[k];
        critic_in[buffer.state_dim] = tr.action[0];
        critic_in[buffer.state_dim + 1] = tr.action[1];
        ForwardCache cache;
        const double q = mlp_forward(result.critic, critic_in, &cache)[0];
        const double td = q - y;
        batch_critic_loss += td * td * inv_batch;
        const double dq[1] = {2.0 * td * inv_batch};
        mlp_backward(result.critic, cache, dq, critic_grad);
      }
      adam_update(result.critic, critic_grad, critic_opt, cfg.lr);

      // actor: ascend Q(s, actor(obs)) through the critic's action input
      Gradients actor_grad = make_zero_gradients(result.actor);
      double batch_actor_loss = 0.0;
      for (int s = 0; s < cfg.batch; ++s) {
        const Transition& tr = buffer.items[batch_idx[s]];
        const std::vector<double> obs = to_double(tr.actor_obs);
        ForwardCache actor_cache;
        const std::vector<double> u =
            mlp_forward(result.actor, obs, &actor_cache);
        for (int k = 0; k < buffer.state_dim; ++k)
          critic_in[k] = tr.full_state[k];
        critic_in[buffer.state_dim] = u[0];
        critic_in[buffer.state_dim + 1] = u[1];
        ForwardCache critic_cache;
        const double q = mlp_forward(result.critic, critic_in, &critic_cache)[0];
        batch_actor_loss -= q * inv_batch;

        const double dq[1] = {1.0};
        const Gradients cg = mlp_backward(result.critic, critic_cache, dq);
        // dLoss/du = -(1/B) dQ/du
        const double du[2] = {-inv_batch * cg.input[buffer.state_dim],
                              -inv_batch * cg.input[buffer.state_dim + 1]};
        mlp_backward(result.actor, actor_cache, du, actor_grad);
      }
      adam_update(result.actor, actor_grad, actor_opt, cfg.lr);

      polyak_update(critic_target, result.critic, cfg.polyak);
      polyak_update(actor_target, result.actor, cfg.polyak);

      critic_loss_sum += batch_critic_loss;
      actor_loss_sum += batch_actor_loss;
    }

    result.losses.push_back({epoch,
                             batches ? critic_loss_sum / batches : 0.0,
                             batches ? actor_loss_sum / batches : 0.0});
  }
  return result;
}

void write_loss_csv(const std::vector<EpochLoss>& losses,
                    const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "epoch,critic_loss,actor_loss\n";
  char buf[96];
  for (const EpochLoss& l : losses) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", l.epoch, l.critic_loss,
                  l.actor_loss);
    out << buf;
  }
}

PushCommand ActorPolicy::decide(const VisualGrid& v, const Scene&,
                                Rng&) const {
  const std::vector<double> obs = actor_observation(v);
  const std::vector<double> u = mlp_forward(actor_, obs);
  return denormalize_action({u[0], u[1]}, lim_);
}

}  // namespace espush

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "espush/mlp.hpp"
#include "espush/replay.hpp"

namespace espush {

struct DdpgConfig {
  double gamma = 0.9;
  double polyak = 0.999;
  double lr = 1e-3;
  int batch = 32;
  int epochs = 50;
  int hidden_units = 512;
  int n_hidden = 3;
  std::size_t buffer_size = 100000;
  std::uint64_t seed = 0;

  // full-scale profile: 3x512 networks, 50 epochs, 100K transitions
  static DdpgConfig paper();
  // small profile used by CI and smoke runs
  static DdpgConfig desk();
};

struct EpochLoss {
  int epoch = 0;
  double critic_loss = 0.0;
  double actor_loss = 0.0;
};

struct TrainResult {
  Mlp actor;
  Mlp critic;
  std::vector<EpochLoss> losses;
};

// Reward of a stored transition under a scheme: terminal fell-off / singulated
// map to -1 / +1, anything else gets the scheme's step reward.
double reconstruct_reward(const Transition& tr, RewardScheme scheme,
                          int t_max);

// Offline asymmetric DDPG over the fixed buffer: the critic sees
// full_state ++ action, the actor sees the pooled visual observation. Target
// networks track with polyak averaging after every minibatch. Deterministic
// for a given (buffer, cfg.seed).
TrainResult ddpg_train(const ReplayBuffer& buffer, const DdpgConfig& cfg,
                       RewardScheme scheme);

// epoch,critic_loss,actor_loss
void write_loss_csv(const std::vector<EpochLoss>& losses,
                    const std::string& path);

// Runs a trained actor as a push policy.
class ActorPolicy : public PushPolicy {
 public:
  ActorPolicy(Mlp actor, const PolicyLimits& lim, std::string name = "RL")
      : actor_(std::move(actor)), lim_(lim), name_(std::move(name)) {}

  PushCommand decide(const VisualGrid& v, const Scene&, Rng&) const override;
  std::string name() const override { return name_; }

 private:
  Mlp actor_;
  PolicyLimits lim_;
  std::string name_;
};

}  // namespace espush

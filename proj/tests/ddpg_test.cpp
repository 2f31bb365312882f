#include <cmath>

#include "doctest.h"
#include "espush/ddpg.hpp"

using namespace espush;

namespace {

ReplayBuffer tiny_buffer(std::size_t n, std::uint64_t seed, int t_max = 10) {
  SceneGenConfig scenes;
  scenes.n_obstacles = {2, 3};
  MdpConfig mdp;
  mdp.t_max = t_max;
  return fill_replay_buffer(n, scenes, mdp, seed);
}

DdpgConfig tiny_config() {
  DdpgConfig cfg;
  cfg.hidden_units = 24;
  cfg.epochs = 6;
  cfg.batch = 32;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("ddpg_train: critic TD loss shrinks on a small run") {
  const ReplayBuffer buf = tiny_buffer(512, 100);
  const TrainResult r = ddpg_train(buf, tiny_config(), RewardScheme::kEsShaped);
  REQUIRE(r.losses.size() == 6);
  CHECK(r.losses.back().critic_loss < r.losses.front().critic_loss);
  CHECK(r.actor.output_dim() == 2);
  CHECK(r.critic.input_dim() == kFullStateDim + 2);
  CHECK(r.actor.input_dim() == kActorObsDim);
}

TEST_CASE("ddpg_train: gamma 0 regresses the critic onto immediate rewards") {
  const ReplayBuffer buf = tiny_buffer(384, 55, 3);  // short episodes
  DdpgConfig cfg = tiny_config();
  cfg.gamma = 0.0;
  cfg.hidden_units = 32;
  cfg.epochs = 40;
  const TrainResult r = ddpg_train(buf, cfg, RewardScheme::kSparse);

  double sum_err = 0.0;
  long n_terminal = 0;
  std::vector<double> in(kFullStateDim + 2);
  for (const Transition& tr : buf.items) {
    if (!tr.done) continue;
    ++n_terminal;
    for (int k = 0; k < kFullStateDim; ++k) in[k] = tr.full_state[k];
    in[kFullStateDim] = tr.action[0];
    in[kFullStateDim + 1] = tr.action[1];
    const double q = mlp_forward(r.critic, in)[0];
    sum_err += std::abs(q - reconstruct_reward(tr, RewardScheme::kSparse,
                                               buf.t_max));
  }
  REQUIRE(n_terminal > 20);
  CHECK(sum_err / n_terminal < 0.1);
}

TEST_CASE("ddpg_train is bit-reproducible for a fixed seed") {
  const ReplayBuffer buf = tiny_buffer(256, 9);
  DdpgConfig cfg = tiny_config();
  cfg.epochs = 3;
  const TrainResult a = ddpg_train(buf, cfg, RewardScheme::kLesShaped);
  const TrainResult b = ddpg_train(buf, cfg, RewardScheme::kLesShaped);
  for (int l = 0; l < a.actor.n_layers(); ++l) {
    CHECK(a.actor.weights[l] == b.actor.weights[l]);
    CHECK(a.critic.weights[l] == b.critic.weights[l]);
  }
  REQUIRE(a.losses.size() == b.losses.size());
  for (std::size_t k = 0; k < a.losses.size(); ++k) {
    CHECK(a.losses[k].critic_loss == b.losses[k].critic_loss);
    CHECK(a.losses[k].actor_loss == b.losses[k].actor_loss);
  }
}

TEST_CASE("ActorPolicy emits in-range commands from the tanh head") {
  const ReplayBuffer buf = tiny_buffer(128, 2);
  DdpgConfig cfg = tiny_config();
  cfg.epochs = 1;
  const TrainResult r = ddpg_train(buf, cfg, RewardScheme::kSparse);
  const PolicyLimits lim;
  const ActorPolicy policy(r.actor, lim, "RL");

  SceneGenConfig scenes;
  scenes.n_obstacles = {2, 3};
  Rng rng(1);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Scene sc = generate_scene(scenes, 900 + s);
    const VisualGrid v = render_visual_state(sc);
    const PushCommand cmd = policy.decide(v, sc, rng);
    CHECK(cmd.theta >= -3.1415926535897932);
    CHECK(cmd.theta < 3.1415926535897932);
    CHECK(cmd.d >= lim.d_min);
    CHECK(cmd.d <= lim.d_max);
  }
}

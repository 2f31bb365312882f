#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "espush/mdp.hpp"

namespace espush {

// One stored push. The sparse reward plus both shaping errors are enough to
// reconstruct all three reward schemes at training time, so a single buffer
// serves every agent. next_full_state is all zero when the target fell off
// (the terminal flag masks it in the bootstrap anyway).
struct Transition {
  std::vector<float> actor_obs;
  std::vector<float> full_state;
  std::array<float, 2> action{};  // normalized to [-1, 1]^2
  float sparse_reward = 0.0f;
  float e_es = 0.0f;
  float e_les = 0.0f;
  std::vector<float> next_actor_obs;
  std::vector<float> next_full_state;
  bool done = false;
  Outcome outcome = Outcome::kRunning;
};

struct ReplayBuffer {
  std::vector<Transition> items;
  std::uint64_t seed = 0;
  int t_max = 10;
  int actor_dim = kActorObsDim;
  int state_dim = kFullStateDim;
};

// Random-policy rollouts on freshly generated scenes until `buffer_size`
// transitions are stored. Episode i draws its scene from
// mix_seed(seed, 2i) and its action stream from mix_seed(seed, 2i+1), so
// the result is identical for any n_threads.
ReplayBuffer fill_replay_buffer(std::size_t buffer_size,
                                const SceneGenConfig& scene_cfg,
                                const MdpConfig& mdp_cfg, std::uint64_t seed,
                                int n_threads = 1);

// Versioned little-endian dump.
void save_buffer(const ReplayBuffer& buf, const std::string& path);
ReplayBuffer load_buffer(const std::string& path);

}  // namespace espush

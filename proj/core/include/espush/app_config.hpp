#pragma once

#include <stdexcept>
#include <string>

#include "espush/ddpg.hpp"
#include "espush/mdp.hpp"
#include "espush/scene.hpp"

namespace espush {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Effective configuration of a CLI run. Every field has a default; a config
// file overrides selectively but may not introduce unknown keys.
struct AppConfig {
  SceneGenConfig scene_gen;
  SimConfig sim;
  PolicyLimits limits;
  int t_max = 10;
  RewardScheme scheme = RewardScheme::kSparse;
  DdpgConfig ddpg;
  int threads = 1;
  int scene_count = 200;

  MdpConfig mdp() const {
    return MdpConfig{t_max, scheme, limits, sim};
  }
};

// Throws ConfigError on syntax errors, unknown keys or out-of-range values.
AppConfig parse_app_config(const std::string& json_text);
AppConfig load_app_config(const std::string& path);  // may be ""

// Canonical JSON echo of the full effective config.
std::string config_echo_json(const AppConfig& cfg);

RewardScheme scheme_from_string(const std::string& s);

}  // namespace espush

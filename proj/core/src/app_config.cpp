#include "espush/app_config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace espush {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& scope,
                const std::set<std::string>& known) {
  if (!j.is_object())
    throw ConfigError("config section '" + scope + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key))
      throw ConfigError("unknown config key '" + scope + "." + key + "'");
  }
}

template <typename T>
void fetch(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

void fetch_interval(const json& j, const char* key, Interval& out) {
  if (!j.contains(key)) return;
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 2)
    throw ConfigError(std::string("'") + key + "' must be [lo, hi]");
  out.lo = arr[0].get<double>();
  out.hi = arr[1].get<double>();
  if (!(out.lo <= out.hi) || !(out.lo > 0.0))
    throw ConfigError(std::string("'") + key + "' must be positive and ordered");
}

void fetch_int_interval(const json& j, const char* key, IntInterval& out) {
  if (!j.contains(key)) return;
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 2)
    throw ConfigError(std::string("'") + key + "' must be [lo, hi]");
  out.lo = arr[0].get<int>();
  out.hi = arr[1].get<int>();
  if (out.lo < 0 || out.lo > out.hi)
    throw ConfigError(std::string("'") + key + "' must be ordered and >= 0");
}

}  // namespace

RewardScheme scheme_from_string(const std::string& s) {
  if (s == "sparse") return RewardScheme::kSparse;
  if (s == "es" || s == "es_shaped") return RewardScheme::kEsShaped;
  if (s == "les" || s == "les_shaped") return RewardScheme::kLesShaped;
  throw ConfigError("unknown reward scheme '" + s + "'");
}

AppConfig parse_app_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, "", {"scene_gen", "sim", "limits", "mdp", "ddpg", "eval",
                     "gen"});

  AppConfig cfg;
  if (j.contains("scene_gen")) {
    const json& s = j["scene_gen"];
    check_keys(s, "scene_gen",
               {"n_obstacles", "target_half_extent", "obstacle_half_extent",
                "height", "placement_radius", "target_center_jitter",
                "max_rejection_attempts", "side", "d_sing"});
    fetch_int_interval(s, "n_obstacles", cfg.scene_gen.n_obstacles);
    fetch_interval(s, "target_half_extent", cfg.scene_gen.target_half_extent);
    fetch_interval(s, "obstacle_half_extent",
                   cfg.scene_gen.obstacle_half_extent);
    fetch_interval(s, "height", cfg.scene_gen.height);
    fetch(s, "placement_radius", cfg.scene_gen.placement_radius);
    fetch(s, "target_center_jitter", cfg.scene_gen.target_center_jitter);
    fetch(s, "max_rejection_attempts", cfg.scene_gen.max_rejection_attempts);
    fetch(s, "side", cfg.scene_gen.side);
    fetch(s, "d_sing", cfg.scene_gen.d_sing);
    if (!(cfg.scene_gen.side > 0.0) || !(cfg.scene_gen.d_sing > 0.0) ||
        !(cfg.scene_gen.placement_radius > 0.0))
      throw ConfigError("scene_gen dimensions must be positive");
  }
  if (j.contains("sim")) {
    const json& s = j["sim"];
    check_keys(s, "sim", {"finger_half_extent", "substep", "relax_iters"});
    fetch(s, "finger_half_extent", cfg.sim.finger_half_extent);
    fetch(s, "substep", cfg.sim.substep);
    fetch(s, "relax_iters", cfg.sim.relax_iters);
    if (!(cfg.sim.substep > 0.0) || cfg.sim.relax_iters < 1)
      throw ConfigError("sim.substep must be > 0 and sim.relax_iters >= 1");
  }
  if (j.contains("limits")) {
    const json& s = j["limits"];
    check_keys(s, "limits", {"d_max", "d_min", "patch_px"});
    fetch(s, "d_max", cfg.limits.d_max);
    fetch(s, "d_min", cfg.limits.d_min);
    fetch(s, "patch_px", cfg.limits.patch_px);
    if (!(0.0 < cfg.limits.d_min && cfg.limits.d_min < cfg.limits.d_max))
      throw ConfigError("limits require 0 < d_min < d_max");
    if (cfg.limits.patch_px < 1)
      throw ConfigError("limits.patch_px must be >= 1");
  }
  if (j.contains("mdp")) {
    const json& s = j["mdp"];
    check_keys(s, "mdp", {"t_max", "scheme"});
    fetch(s, "t_max", cfg.t_max);
    if (cfg.t_max < 1) throw ConfigError("mdp.t_max must be >= 1");
    if (s.contains("scheme"))
      cfg.scheme = scheme_from_string(s.at("scheme").get<std::string>());
  }
  if (j.contains("ddpg")) {
    const json& s = j["ddpg"];
    check_keys(s, "ddpg",
               {"gamma", "polyak", "lr", "batch", "epochs", "hidden_units",
                "n_hidden", "buffer_size", "profile"});
    if (s.contains("profile")) {
      const std::string p = s.at("profile").get<std::string>();
      if (p == "paper") {
        cfg.ddpg = DdpgConfig::paper();
      } else if (p == "desk") {
        cfg.ddpg = DdpgConfig::desk();
      } else {
        throw ConfigError("ddpg.profile must be 'paper' or 'desk'");
      }
    }
    fetch(s, "gamma", cfg.ddpg.gamma);
    fetch(s, "polyak", cfg.ddpg.polyak);
    fetch(s, "lr", cfg.ddpg.lr);
    fetch(s, "batch", cfg.ddpg.batch);
    fetch(s, "epochs", cfg.ddpg.epochs);
    fetch(s, "hidden_units", cfg.ddpg.hidden_units);
    fetch(s, "n_hidden", cfg.ddpg.n_hidden);
    fetch(s, "buffer_size", cfg.ddpg.buffer_size);
    if (!(cfg.ddpg.gamma > 0.0 && cfg.ddpg.gamma < 1.0))
      throw ConfigError("ddpg.gamma must be in (0, 1)");
    if (!(cfg.ddpg.polyak > 0.0 && cfg.ddpg.polyak < 1.0))
      throw ConfigError("ddpg.polyak must be in (0, 1)");
    if (cfg.ddpg.batch < 1 || cfg.ddpg.epochs < 1 ||
        cfg.ddpg.hidden_units < 1 || cfg.ddpg.n_hidden < 1 ||
        cfg.ddpg.buffer_size < 1)
      throw ConfigError("ddpg sizes must be positive");
  }
  if (j.contains("eval")) {
    const json& s = j["eval"];
    check_keys(s, "eval", {"threads"});
    fetch(s, "threads", cfg.threads);
    if (cfg.threads < 1) throw ConfigError("eval.threads must be >= 1");
  }
  if (j.contains("gen")) {
    const json& s = j["gen"];
    check_keys(s, "gen", {"scene_count"});
    fetch(s, "scene_count", cfg.scene_count);
    if (cfg.scene_count < 1) throw ConfigError("gen.scene_count must be >= 1");
  }
  return cfg;
}

AppConfig load_app_config(const std::string& path) {
  if (path.empty()) return AppConfig{};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_app_config(text);
}

std::string config_echo_json(const AppConfig& cfg) {
  json j{
      {"scene_gen",
       {{"n_obstacles", {cfg.scene_gen.n_obstacles.lo, cfg.scene_gen.n_obstacles.hi}},
        {"target_half_extent",
         {cfg.scene_gen.target_half_extent.lo, cfg.scene_gen.target_half_extent.hi}},
        {"obstacle_half_extent",
         {cfg.scene_gen.obstacle_half_extent.lo,
          cfg.scene_gen.obstacle_half_extent.hi}},
        {"height", {cfg.scene_gen.height.lo, cfg.scene_gen.height.hi}},
        {"placement_radius", cfg.scene_gen.placement_radius},
        {"target_center_jitter", cfg.scene_gen.target_center_jitter},
        {"max_rejection_attempts", cfg.scene_gen.max_rejection_attempts},
        {"side", cfg.scene_gen.side},
        {"d_sing", cfg.scene_gen.d_sing}}},
      {"sim",
       {{"finger_half_extent", cfg.sim.finger_half_extent},
        {"substep", cfg.sim.substep},
        {"relax_iters", cfg.sim.relax_iters}}},
      {"limits",
       {{"d_max", cfg.limits.d_max},
        {"d_min", cfg.limits.d_min},
        {"patch_px", cfg.limits.patch_px}}},
      {"mdp", {{"t_max", cfg.t_max}, {"scheme", to_string(cfg.scheme)}}},
      {"ddpg",
       {{"gamma", cfg.ddpg.gamma},
        {"polyak", cfg.ddpg.polyak},
        {"lr", cfg.ddpg.lr},
        {"batch", cfg.ddpg.batch},
        {"epochs", cfg.ddpg.epochs},
        {"hidden_units", cfg.ddpg.hidden_units},
        {"n_hidden", cfg.ddpg.n_hidden},
        {"buffer_size", cfg.ddpg.buffer_size}}},
      {"eval", {{"threads", cfg.threads}}},
      {"gen", {{"scene_count", cfg.scene_count}}}};
  return j.dump();
}

}  // namespace espush

#include "espush/scene.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "espush/rng.hpp"
#include "json.hpp"

namespace espush {

namespace {

constexpr double kPi = std::numbers::pi;

bool center_in_workspace(const Scene& sc, const Vec2& c) {
  const double half = sc.side / 2.0;
  return std::abs(c.x) <= half && std::abs(c.y) <= half;
}

bool overlaps_any(const Scene& sc, const Obb2& box) {
  for (const ObjectSpec& obj : sc.objects) {
    if (obb_overlap_mtv(box, obj.footprint)) return true;
  }
  return false;
}

nlohmann::json scene_to_json(const Scene& sc) {
  nlohmann::json objs = nlohmann::json::array();
  for (const ObjectSpec& o : sc.objects) {
    objs.push_back({{"id", o.id},
                    {"role", o.role == ObjectRole::kTarget ? "target"
                                                           : "obstacle"},
                    {"cx", o.footprint.center.x},
                    {"cy", o.footprint.center.y},
                    {"yaw", o.footprint.yaw},
                    {"hx", o.footprint.hx},
                    {"hy", o.footprint.hy},
                    {"height", o.height}});
  }
  return {{"side", sc.side},
          {"d_sing", sc.d_sing},
          {"seed", sc.seed},
          {"objects", std::move(objs)}};
}

Scene scene_from_json(const nlohmann::json& j) {
  Scene sc;
  try {
    sc.side = j.at("side").get<double>();
    sc.d_sing = j.at("d_sing").get<double>();
    sc.seed = j.at("seed").get<std::uint64_t>();
    for (const nlohmann::json& jo : j.at("objects")) {
      ObjectSpec o;
      o.id = jo.at("id").get<int>();
      const std::string role = jo.at("role").get<std::string>();
      if (role == "target") {
        o.role = ObjectRole::kTarget;
      } else if (role == "obstacle") {
        o.role = ObjectRole::kObstacle;
      } else {
        throw SceneIoError("unknown object role: " + role);
      }
      o.footprint.center.x = jo.at("cx").get<double>();
      o.footprint.center.y = jo.at("cy").get<double>();
      o.footprint.yaw = jo.at("yaw").get<double>();
      o.footprint.hx = jo.at("hx").get<double>();
      o.footprint.hy = jo.at("hy").get<double>();
      o.height = jo.at("height").get<double>();
      if (!(o.footprint.hx > 0.0) || !(o.footprint.hy > 0.0) ||
          !(o.height > 0.0)) {
        throw SceneIoError("object " + std::to_string(o.id) +
                           " has non-positive dimensions");
      }
      sc.objects.push_back(o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw SceneIoError(std::string("malformed scene: ") + e.what());
  }
  int n_targets = 0;
  for (const ObjectSpec& o : sc.objects) {
    if (o.role == ObjectRole::kTarget) ++n_targets;
  }
  if (n_targets != 1) {
    throw SceneIoError("scene must contain exactly one target, found " +
                       std::to_string(n_targets));
  }
  return sc;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SceneIoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SceneIoError(path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw SceneIoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw SceneIoError("write failed: " + path);
}

}  // namespace

const ObjectSpec* Scene::target() const {
  for (const ObjectSpec& o : objects) {
    if (o.role == ObjectRole::kTarget) return &o;
  }
  return nullptr;
}

Scene generate_scene(const SceneGenConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  int attempts = 0;
  const auto budget = [&] {
    if (++attempts > cfg.max_rejection_attempts) {
      throw GenerationFailed("scene generation exceeded " +
                             std::to_string(cfg.max_rejection_attempts) +
                             " rejection attempts (seed " +
                             std::to_string(seed) + ")");
    }
  };

  for (;;) {
    Scene sc;
    sc.side = cfg.side;
    sc.d_sing = cfg.d_sing;
    sc.seed = seed;

    ObjectSpec target;
    target.id = 0;
    target.role = ObjectRole::kTarget;
    target.footprint.center = {
        rng.uniform(-cfg.target_center_jitter, cfg.target_center_jitter),
        rng.uniform(-cfg.target_center_jitter, cfg.target_center_jitter)};
    target.footprint.hx =
        rng.uniform(cfg.target_half_extent.lo, cfg.target_half_extent.hi);
    target.footprint.hy =
        rng.uniform(cfg.target_half_extent.lo, cfg.target_half_extent.hi);
    target.footprint.yaw = rng.uniform(-kPi, kPi);
    target.height = rng.uniform(cfg.height.lo, cfg.height.hi);
    sc.objects.push_back(target);

    const int n_obstacles = static_cast<int>(
        rng.uniform_int(cfg.n_obstacles.lo, cfg.n_obstacles.hi));
    bool scene_ok = true;
    for (int k = 1; k <= n_obstacles && scene_ok; ++k) {
      ObjectSpec obs;
      obs.id = k;
      obs.role = ObjectRole::kObstacle;
      for (;;) {
        budget();
        const double r = cfg.placement_radius * std::sqrt(rng.uniform01());
        const double ang = rng.uniform(-kPi, kPi);
        obs.footprint.center =
            target.footprint.center + Vec2{r * std::cos(ang), r * std::sin(ang)};
        obs.footprint.hx = rng.uniform(cfg.obstacle_half_extent.lo,
                                       cfg.obstacle_half_extent.hi);
        obs.footprint.hy = rng.uniform(cfg.obstacle_half_extent.lo,
                                       cfg.obstacle_half_extent.hi);
        obs.footprint.yaw = rng.uniform(-kPi, kPi);
        obs.height = rng.uniform(cfg.height.lo, cfg.height.hi);
        if (!center_in_workspace(sc, obs.footprint.center)) continue;
        if (overlaps_any(sc, obs.footprint)) continue;
        break;
      }
      sc.objects.push_back(obs);
    }

    // A scene that starts singulated has nothing to solve; redraw.
    if (is_singulated(sc)) {
      budget();
      continue;
    }
    return sc;
  }
}

bool is_singulated(const Scene& sc) {
  const ObjectSpec* target = sc.target();
  if (target == nullptr) return false;
  for (const ObjectSpec& o : sc.objects) {
    if (o.role == ObjectRole::kTarget) continue;
    if (obb_separation_distance(target->footprint, o.footprint) <= sc.d_sing)
      return false;
  }
  return true;
}

bool target_off_workspace(const Scene& sc) {
  const ObjectSpec* target = sc.target();
  if (target == nullptr) return true;
  return !center_in_workspace(sc, target->footprint.center);
}

void save_scene(const Scene& sc, const std::string& path) {
  write_file(path, scene_to_json(sc));
}

Scene load_scene(const std::string& path) {
  return scene_from_json(parse_file(path));
}

void save_scene_batch(const std::vector<Scene>& scenes,
                      const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const Scene& sc : scenes) j.push_back(scene_to_json(sc));
  write_file(path, j);
}

std::vector<Scene> load_scene_batch(const std::string& path) {
  const nlohmann::json j = parse_file(path);
  if (!j.is_array()) throw SceneIoError(path + ": batch file must be an array");
  std::vector<Scene> scenes;
  scenes.reserve(j.size());
  for (const nlohmann::json& js : j) scenes.push_back(scene_from_json(js));
  return scenes;
}

}  // namespace espush

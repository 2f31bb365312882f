#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "espush/geometry.hpp"

namespace espush {

enum class ObjectRole { kTarget, kObstacle };

struct ObjectSpec {
  int id = 0;
  ObjectRole role = ObjectRole::kObstacle;
  Obb2 footprint;
  double height = 0.0;  // full height above the table

  bool operator==(const ObjectSpec&) const = default;
};

// A tabletop scene. The workspace is the square [-side/2, side/2]^2 with the
// world frame at its center. Generated scenes hold exactly one target; a
// push may later remove it (fall-off).
struct Scene {
  double side = 0.5;
  double d_sing = 0.03;
  std::uint64_t seed = 0;
  std::vector<ObjectSpec> objects;

  const ObjectSpec* target() const;

  bool operator==(const Scene&) const = default;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntInterval {
  int lo = 0;
  int hi = 0;
};

struct SceneGenConfig {
  IntInterval n_obstacles{8, 13};
  Interval target_half_extent{0.015, 0.03};
  Interval obstacle_half_extent{0.01, 0.035};
  Interval height{0.01, 0.04};
  double placement_radius = 0.15;   // obstacle centers land in this disk
  double target_center_jitter = 0.05;
  int max_rejection_attempts = 100000;
  double side = 0.5;
  double d_sing = 0.03;
};

struct GenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SceneIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic per seed. The target lands near the workspace center, the
// obstacles around it without mutual overlap, and the whole draw is
// rejected until the scene starts non-singulated.
Scene generate_scene(const SceneGenConfig& cfg, std::uint64_t seed);

// True iff every remaining obstacle clears the target by more than d_sing.
// Vacuously true with no obstacles; false when the scene has no target.
bool is_singulated(const Scene& sc);

// True iff the target center lies outside the closed workspace square.
// A scene whose target already fell off (no target object) reports true.
bool target_off_workspace(const Scene& sc);

void save_scene(const Scene& sc, const std::string& path);
Scene load_scene(const std::string& path);

void save_scene_batch(const std::vector<Scene>& scenes,
                      const std::string& path);
std::vector<Scene> load_scene_batch(const std::string& path);

}  // namespace espush

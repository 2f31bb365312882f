#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "espush/scene.hpp"

using namespace espush;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

Scene two_object_scene(double obstacle_x) {
  Scene sc;
  sc.side = 0.5;
  sc.d_sing = 0.03;
  sc.objects.push_back(
      {0, ObjectRole::kTarget, Obb2{{0, 0}, 0.02, 0.02, 0}, 0.02});
  sc.objects.push_back(
      {1, ObjectRole::kObstacle, Obb2{{obstacle_x, 0}, 0.02, 0.02, 0}, 0.02});
  return sc;
}

}  // namespace

TEST_CASE("generate_scene: obstacle count and non-singulated start") {
  SceneGenConfig cfg;
  const Scene sc = generate_scene(cfg, 42);
  int obstacles = 0;
  for (const ObjectSpec& o : sc.objects)
    if (o.role == ObjectRole::kObstacle) ++obstacles;
  CHECK(obstacles >= 8);
  CHECK(obstacles <= 13);
  CHECK(!is_singulated(sc));
  REQUIRE(sc.target() != nullptr);
  CHECK(std::abs(sc.target()->footprint.center.x) <= 0.05);
  CHECK(std::abs(sc.target()->footprint.center.y) <= 0.05);
}

TEST_CASE("generate_scene: identical seeds give identical scenes") {
  SceneGenConfig cfg;
  const Scene a = generate_scene(cfg, 7);
  const Scene b = generate_scene(cfg, 7);
  CHECK(a == b);
  const Scene c = generate_scene(cfg, 8);
  CHECK(a != c);
}

TEST_CASE("generate_scene: infeasible packing fails cleanly") {
  SceneGenConfig cfg;
  cfg.placement_radius = 0.011;  // no room for even one obstacle
  cfg.n_obstacles = {8, 13};
  cfg.max_rejection_attempts = 2000;
  CHECK_THROWS_AS(generate_scene(cfg, 1), GenerationFailed);
}

TEST_CASE("generated scenes have no overlapping pairs") {
  SceneGenConfig cfg;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene sc = generate_scene(cfg, seed);
    for (std::size_t i = 0; i + 1 < sc.objects.size(); ++i) {
      for (std::size_t j = i + 1; j < sc.objects.size(); ++j) {
        CHECK(!obb_overlap_mtv(sc.objects[i].footprint,
                               sc.objects[j].footprint));
      }
    }
    const double half = sc.side / 2;
    for (const ObjectSpec& o : sc.objects) {
      CHECK(std::abs(o.footprint.center.x) <= half);
      CHECK(std::abs(o.footprint.center.y) <= half);
    }
  }
}

TEST_CASE("is_singulated thresholds on d_sing") {
  CHECK(is_singulated(two_object_scene(0.1)));    // gap 0.06
  CHECK(!is_singulated(two_object_scene(0.06)));  // gap 0.02
}

TEST_CASE("is_singulated is vacuously true without obstacles") {
  Scene sc = two_object_scene(0.1);
  sc.objects.pop_back();
  CHECK(is_singulated(sc));
}

TEST_CASE("is_singulated is monotone under obstacle removal") {
  SceneGenConfig cfg;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const Scene sc = generate_scene(cfg, seed);
    const bool before = is_singulated(sc);
    for (std::size_t k = 0; k < sc.objects.size(); ++k) {
      if (sc.objects[k].role != ObjectRole::kObstacle) continue;
      Scene fewer = sc;
      fewer.objects.erase(fewer.objects.begin() + static_cast<long>(k));
      if (before) CHECK(is_singulated(fewer));
    }
  }
}

TEST_CASE("target_off_workspace uses the closed square") {
  Scene sc = two_object_scene(0.1);
  CHECK(!target_off_workspace(sc));
  sc.objects[0].footprint.center = {0.26, 0};
  CHECK(target_off_workspace(sc));
  sc.objects[0].footprint.center = {0.25, 0};  // exactly on the edge
  CHECK(!target_off_workspace(sc));
}

TEST_CASE("scene file round-trip is exact") {
  SceneGenConfig cfg;
  const Scene sc = generate_scene(cfg, 77);
  const std::string path = temp_path("espush_scene_rt.json");
  save_scene(sc, path);
  const Scene back = load_scene(path);
  CHECK(back == sc);
  std::filesystem::remove(path);
}

TEST_CASE("scene without a target is rejected on load") {
  const std::string path = temp_path("espush_scene_bad.json");
  {
    std::ofstream out(path);
    out << R"({"side":0.5,"d_sing":0.03,"seed":1,"objects":[
      {"id":1,"role":"obstacle","cx":0,"cy":0,"yaw":0,"hx":0.02,"hy":0.02,"height":0.02}]})";
  }
  CHECK_THROWS_AS(load_scene(path), SceneIoError);
  std::filesystem::remove(path);
}

TEST_CASE("batch round-trip preserves order and count") {
  SceneGenConfig cfg;
  cfg.n_obstacles = {2, 4};
  std::vector<Scene> scenes;
  for (std::uint64_t s = 0; s < 25; ++s)
    scenes.push_back(generate_scene(cfg, 1000 + s));
  const std::string path = temp_path("espush_batch_rt.json");
  save_scene_batch(scenes, path);
  const std::vector<Scene> back = load_scene_batch(path);
  REQUIRE(back.size() == scenes.size());
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == scenes[i]);
  std::filesystem::remove(path);
}

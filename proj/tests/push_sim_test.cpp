#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "espush/push_sim.hpp"
#include "espush/rng.hpp"
#include "espush/scene.hpp"

using namespace espush;

namespace {

Scene scene_with(std::vector<ObjectSpec> objects) {
  Scene sc;
  sc.side = 0.5;
  sc.d_sing = 0.03;
  sc.objects = std::move(objects);
  return sc;
}

constexpr SimConfig kSim{};  // defaults: finger 0.01, substep 0.002, 10 iters

}  // namespace

TEST_CASE("execute_push: empty scene is a no-op") {
  const Scene sc = scene_with({});
  const PushOutcome out = execute_push(sc, {{-0.1, 0}, {0.1, 0}, 0.01}, kSim);
  CHECK(out.next == sc);
  CHECK(out.moved_ids.empty());
  CHECK(out.fell_off_ids.empty());
  CHECK(!out.target_fell);
}

TEST_CASE("execute_push: target on the path gets carried, fine substeps agree") {
  const Scene sc = scene_with(
      {{0, ObjectRole::kTarget, Obb2{{0, 0}, 0.02, 0.02, 0}, 0.02}});
  const PushSegment seg{{-0.08, 0}, {0.02, 0}, 0.01};

  const PushOutcome out = execute_push(sc, seg, kSim);
  REQUIRE(out.next.target() != nullptr);
  CHECK(out.moved_ids == std::vector<int>{0});
  // the finger face reaches x = 0.03; the target face started at -0.02,
  // so the carry is about 0.05 minus the initial gap resolution
  CHECK(out.next.target()->footprint.center.x > 0.02);
  CHECK(std::abs(out.next.target()->footprint.center.y) < 1e-12);

  SimConfig fine = kSim;
  fine.substep = 0.0001;  // 0.1 mm reference
  const PushOutcome ref = execute_push(sc, seg, fine);
  const double diff = (out.next.target()->footprint.center -
                       ref.next.target()->footprint.center)
                          .norm();
  CHECK(diff <= 1e-3);
}

TEST_CASE("execute_push: finger passes above short obstacles") {
  const Scene sc = scene_with(
      {{0, ObjectRole::kTarget, Obb2{{0.2, 0.2}, 0.02, 0.02, 0}, 0.02},
       {1, ObjectRole::kObstacle, Obb2{{0, 0}, 0.02, 0.02, 0}, 0.005}});
  const PushOutcome out =
      execute_push(sc, {{-0.08, 0}, {0.08, 0}, 0.01}, kSim);
  CHECK(out.moved_ids.empty());
  CHECK(out.next == sc);
}

TEST_CASE("execute_push: push chains shove the obstacle in front") {
  const Scene sc = scene_with(
      {{0, ObjectRole::kTarget, Obb2{{0, 0}, 0.02, 0.02, 0}, 0.03},
       {1, ObjectRole::kObstacle, Obb2{{0.05, 0}, 0.01, 0.03, 0}, 0.03}});
  const PushOutcome out = execute_push(sc, {{-0.06, 0}, {0.04, 0}, 0.01}, kSim);
  CHECK(out.moved_ids == std::vector<int>{0, 1});
  // both slid right and stayed separated
  REQUIRE(out.next.objects.size() == 2);
  CHECK(out.next.target()->footprint.center.x > 0.02);
  CHECK(out.next.objects[1].footprint.center.x > 0.06);
  CHECK(!obb_overlap_mtv(out.next.objects[0].footprint,
                         out.next.objects[1].footprint));
}

TEST_CASE("execute_push: objects leaving the table are removed") {
  const Scene sc = scene_with(
      {{0, ObjectRole::kTarget, Obb2{{0.23, 0}, 0.02, 0.02, 0}, 0.02}});
  const PushOutcome out = execute_push(sc, {{0.15, 0}, {0.30, 0}, 0.01}, kSim);
  CHECK(out.target_fell);
  CHECK(out.fell_off_ids == std::vector<int>{0});
  CHECK(out.next.objects.empty());
  CHECK(out.next.target() == nullptr);
}

TEST_CASE("execute_push: determinism, no-overlap and no-teleport properties") {
  SceneGenConfig cfg;
  Rng rng(2024);
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Scene sc = generate_scene(cfg, seed);
    const double theta = rng.uniform(-3.14159, 3.14159);
    const Vec2 dir{std::cos(theta), std::sin(theta)};
    const Vec2 p1{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
    const PushSegment seg{p1, p1 + dir * rng.uniform(0.02, 0.1), 0.012};

    PushDiagnostics diag;
    const PushOutcome a = execute_push(sc, seg, kSim, &diag);
    const PushOutcome b = execute_push(sc, seg, kSim);
    CHECK(a.next == b.next);
    CHECK(a.moved_ids == b.moved_ids);
    CHECK(a.fell_off_ids == b.fell_off_ids);

    // object count never grows; every loss is recorded
    CHECK(a.next.objects.size() + a.fell_off_ids.size() == sc.objects.size());

    // residual penetration is zero or tiny after relaxation
    if (a.residual_penetration == 0.0) {
      for (std::size_t i = 0; i + 1 < a.next.objects.size(); ++i) {
        for (std::size_t j = i + 1; j < a.next.objects.size(); ++j) {
          const auto mtv = obb_overlap_mtv(a.next.objects[i].footprint,
                                           a.next.objects[j].footprint);
          if (mtv) CHECK(mtv->norm() < 1e-6);
        }
      }
    } else {
      CHECK(a.residual_penetration < 0.02);
    }

    // per-substep motion is bounded by the finger advance plus the worst
    // first-contact resolution (finger diagonal + object extent scale)
    CHECK(diag.max_substep_displacement <
          kSim.substep + 2.0 * (kSim.finger_half_extent + 0.05));
  }
}

TEST_CASE("execute_push: halving the substep moves results by at most 2 mm") {
  SceneGenConfig cfg;
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const Scene sc = generate_scene(cfg, seed);
    // push through the middle of the clutter
    const PushSegment seg{{sc.target()->footprint.center.x - 0.08,
                           sc.target()->footprint.center.y},
                          {sc.target()->footprint.center.x + 0.02,
                           sc.target()->footprint.center.y},
                          0.012};
    SimConfig half = kSim;
    half.substep = kSim.substep / 2.0;
    const PushOutcome a = execute_push(sc, seg, kSim);
    const PushOutcome c = execute_push(sc, seg, half);
    for (const ObjectSpec& oa : a.next.objects) {
      for (const ObjectSpec& oc : c.next.objects) {
        if (oa.id != oc.id) continue;
        CHECK((oa.footprint.center - oc.footprint.center).norm() <= 2e-3);
      }
    }
  }
}

#include "espush/percept.hpp"

#include <algorithm>
#include <cmath>

namespace espush {

VisualGrid render_visual_state(const Scene& sc, int side_px) {
  VisualGrid v;
  v.side = sc.side;
  v.values = Grid<float>(side_px, kFreeValue);

  const ObjectSpec* target = sc.target();
  for (int i = 0; i < side_px; ++i) {
    for (int j = 0; j < side_px; ++j) {
      const Vec2 w = v.world_of_pixel(i, j);
      float value = kFreeValue;
      for (const ObjectSpec& o : sc.objects) {
        if (o.role == ObjectRole::kObstacle && point_in_obb(w, o.footprint)) {
          value = kObstacleValue;
          break;
        }
      }
      if (value == kFreeValue && target != nullptr &&
          point_in_obb(w, target->footprint)) {
        value = kTargetValue;
      }
      v.values(i, j) = value;
    }
  }
  return v;
}

std::vector<double> actor_observation(const VisualGrid& v) {
  const int side = v.values.side();
  const int out_side = side / kPoolFactor;
  std::vector<double> pooled(static_cast<std::size_t>(out_side) * out_side);
  const double inv = 1.0 / (kPoolFactor * kPoolFactor);
  for (int a = 0; a < out_side; ++a) {
    for (int b = 0; b < out_side; ++b) {
      double sum = 0.0;
      for (int di = 0; di < kPoolFactor; ++di) {
        for (int dj = 0; dj < kPoolFactor; ++dj) {
          sum += v.values(a * kPoolFactor + di, b * kPoolFactor + dj);
        }
      }
      pooled[static_cast<std::size_t>(a) * out_side + b] = sum * inv;
    }
  }
  return pooled;
}

FullState critic_state(const Scene& sc) {
  const ObjectSpec* target = sc.target();
  if (target == nullptr) throw NoTarget("critic_state: scene has no target");

  struct Entry {
    double dist2;
    const ObjectSpec* obj;
  };
  std::vector<Entry> obstacles;
  for (const ObjectSpec& o : sc.objects) {
    if (o.role != ObjectRole::kObstacle) continue;
    obstacles.push_back(
        {(o.footprint.center - target->footprint.center).squared_norm(), &o});
  }
  if (static_cast<int>(obstacles.size()) > kMaxObstacles) {
    throw TooManyObstacles("critic_state: " +
                           std::to_string(obstacles.size()) + " obstacles");
  }
  std::sort(obstacles.begin(), obstacles.end(),
            [](const Entry& a, const Entry& b) {
              if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
              return a.obj->id < b.obj->id;
            });

  FullState state{};
  const auto put = [&state](int slot, const ObjectSpec& o) {
    state[slot * 6 + 0] = o.footprint.center.x;
    state[slot * 6 + 1] = o.footprint.center.y;
    state[slot * 6 + 2] = o.footprint.yaw;
    state[slot * 6 + 3] = o.footprint.hx;
    state[slot * 6 + 4] = o.footprint.hy;
    state[slot * 6 + 5] = o.height;
  };
  put(0, *target);
  for (std::size_t k = 0; k < obstacles.size(); ++k)
    put(static_cast<int>(k) + 1, *obstacles[k].obj);
  return state;
}

std::optional<PixelPoint> try_target_centroid(const VisualGrid& v) {
  const int side = v.values.side();
  double si = 0.0, sj = 0.0;
  long count = 0;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      if (v.values(i, j) == kTargetValue) {
        si += i;
        sj += j;
        ++count;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return PixelPoint{si / count, sj / count};
}

PixelPoint target_centroid_px(const VisualGrid& v) {
  if (auto c = try_target_centroid(v)) return *c;
  throw NoTarget("no target pixels in visual state");
}

}  // namespace espush

#include "espush/policy.hpp"

#include <cmath>
#include <numbers>

namespace espush {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCandidateThreshold = 0.9;

}  // namespace

PushCommand decide_from_map(const Grid<double>& map, int row0, int col0,
                            const PixelPoint& centroid_px, double pixel_size,
                            const PolicyLimits& lim) {
  const int side = map.side();
  bool found = false;
  double best_d2 = 0.0;
  int best_i = 0, best_j = 0;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      if (map(i, j) <= kCandidateThreshold) continue;
      const double di = (row0 + i) - centroid_px.i;
      const double dj = (col0 + j) - centroid_px.j;
      const double d2 = di * di + dj * dj;
      if (!found || d2 < best_d2) {  // strict keeps the row-major first
        found = true;
        best_d2 = d2;
        best_i = row0 + i;
        best_j = col0 + j;
      }
    }
  }
  if (!found) {
    // unreachable on a normalized map with max > min (some pixel is 1);
    // fall back to the global maximum in row-major order
    double best_v = -1.0;
    for (int i = 0; i < side; ++i) {
      for (int j = 0; j < side; ++j) {
        if (map(i, j) > best_v) {
          best_v = map(i, j);
          best_i = row0 + i;
          best_j = col0 + j;
        }
      }
    }
  }

  // bearing and stroke in world coordinates; row i runs against +y
  const double dx = (best_j - centroid_px.j) * pixel_size;
  const double dy = -(best_i - centroid_px.i) * pixel_size;
  const double dist = std::sqrt(dx * dx + dy * dy);
  PushCommand cmd;
  if (dist == 0.0) {
    // p* coincides with the centroid; emit the shortest meaningful push
    cmd.theta = 0.0;
    cmd.d = pixel_size;
    return cmd;
  }
  cmd.theta = wrap_angle(std::atan2(dy, dx));
  cmd.d = std::min(dist, lim.d_max);
  return cmd;
}

PushCommand es_decide(const VisualGrid& v, const PolicyLimits& lim) {
  const PixelPoint centroid = target_centroid_px(v);
  const DistanceMap esm = empty_space_map(v);
  return decide_from_map(esm.values, 0, 0, centroid, v.pixel_size(), lim);
}

PushCommand les_decide(const VisualGrid& v, const PolicyLimits& lim) {
  const PixelPoint centroid = target_centroid_px(v);
  const DistanceMap esm = empty_space_map(v);
  const LocalMap local = local_empty_space_map(
      esm, static_cast<int>(std::llround(centroid.i)),
      static_cast<int>(std::llround(centroid.j)));

  bool degenerate = true;
  for (double x : local.values.cells()) {
    if (x != 0.0) {
      degenerate = false;
      break;
    }
  }
  if (degenerate) {
    return decide_from_map(esm.values, 0, 0, centroid, v.pixel_size(), lim);
  }
  return decide_from_map(local.values, local.row0, local.col0, centroid,
                         v.pixel_size(), lim);
}

PushCommand random_decide(Rng& rng, const PolicyLimits& lim) {
  PushCommand cmd;
  cmd.theta = rng.uniform(-kPi, kPi);
  cmd.d = rng.uniform(lim.d_min, lim.d_max);
  return cmd;
}

std::optional<PushSegment> resolve_push_segment(const VisualGrid& v,
                                                const Scene& sc,
                                                const PushCommand& cmd,
                                                const PolicyLimits& lim) {
  const ObjectSpec* target = sc.target();
  if (target == nullptr)
    throw NoTarget("resolve_push_segment: scene has no target");
  const PixelPoint centroid = target_centroid_px(v);

  const int side = v.values.side();
  const int patch = lim.patch_px;
  // pixel-space direction of world bearing theta + pi
  const double di = std::sin(cmd.theta);
  const double dj = -std::cos(cmd.theta);

  for (int k = 1;; ++k) {
    const double si = centroid.i + k * di;
    const double sj = centroid.j + k * dj;
    const int ri = static_cast<int>(std::llround(si));
    const int rj = static_cast<int>(std::llround(sj));
    if (!v.values.in_bounds(ri, rj)) return std::nullopt;
    if (v.values(ri, rj) == kTargetValue) continue;  // still over the target

    const int top_i = ri - patch / 2;
    const int top_j = rj - patch / 2;
    if (top_i < 0 || top_j < 0 || top_i + patch > side || top_j + patch > side)
      continue;
    bool free = true;
    for (int a = 0; a < patch && free; ++a) {
      for (int b = 0; b < patch; ++b) {
        if (v.values(top_i + a, top_j + b) != kFreeValue) {
          free = false;
          break;
        }
      }
    }
    if (!free) continue;

    PushSegment seg;
    const double ci = top_i + (patch - 1) / 2.0;
    const double cj = top_j + (patch - 1) / 2.0;
    seg.p1 = v.world_of_pixel(ci, cj);
    seg.p2 = seg.p1 + Vec2{cmd.d * std::cos(cmd.theta),
                           cmd.d * std::sin(cmd.theta)};
    seg.h = target->height / 2.0;
    return seg;
  }
}

std::array<double, 2> normalize_action(const PushCommand& cmd,
                                       const PolicyLimits& lim) {
  return {cmd.theta / kPi,
          2.0 * (cmd.d - lim.d_min) / (lim.d_max - lim.d_min) - 1.0};
}

PushCommand denormalize_action(const std::array<double, 2>& u,
                               const PolicyLimits& lim) {
  PushCommand cmd;
  cmd.theta = wrap_angle(kPi * u[0]);
  cmd.d = lim.d_min + (u[1] + 1.0) / 2.0 * (lim.d_max - lim.d_min);
  return cmd;
}

}  // namespace espush

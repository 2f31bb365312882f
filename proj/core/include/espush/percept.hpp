#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "espush/grid.hpp"
#include "espush/scene.hpp"

namespace espush {

inline constexpr int kVisualSide = 128;
inline constexpr int kPoolFactor = 8;
inline constexpr int kActorObsDim = 256;  // (128/8)^2 pooled cells
inline constexpr int kMaxObstacles = 13;
inline constexpr int kFullStateDim = 84;  // 6 target fields + 13 * 6

inline constexpr float kFreeValue = 0.0f;
inline constexpr float kTargetValue = 0.5f;
inline constexpr float kObstacleValue = 1.0f;

struct NoTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooManyObstacles : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Possibly fractional pixel position (row i, column j).
struct PixelPoint {
  double i = 0.0;
  double j = 0.0;
};

// Tri-valued scene raster: 0 table, 0.5 target, 1 obstacle. Row i grows with
// world -y and column j with world +x; pixel (i, j) covers a square cell of
// side pixel_size whose center is world_of_pixel(i, j).
struct VisualGrid {
  Grid<float> values;
  double side = 0.5;  // workspace side in meters

  double pixel_size() const { return side / values.side(); }

  Vec2 world_of_pixel(double i, double j) const {
    const double px = pixel_size();
    return {-side / 2.0 + (j + 0.5) * px, side / 2.0 - (i + 0.5) * px};
  }

  PixelPoint pixel_of_world(const Vec2& w) const {
    const double px = pixel_size();
    return {(side / 2.0 - w.y) / px - 0.5, (w.x + side / 2.0) / px - 0.5};
  }

  bool operator==(const VisualGrid&) const = default;
};

using FullState = std::array<double, kFullStateDim>;

// Rasterizes by pixel-center membership, obstacles over target, anything
// outside the workspace cropped away.
VisualGrid render_visual_state(const Scene& sc, int side_px = kVisualSide);

// 8x8 average pooling, row-major. For the standard 128 grid this is the
// 256-dim actor input; values stay in [0, 1] and the grid mean is preserved.
std::vector<double> actor_observation(const VisualGrid& v);

// Privileged critic input: target [x y yaw hx hy height], then obstacle
// slots sorted by center distance to the target (ties by id), zero padded to
// 13. Throws TooManyObstacles past 13 and NoTarget without a target.
FullState critic_state(const Scene& sc);

// Mean (i, j) of target-valued pixels; nullopt when none are visible.
std::optional<PixelPoint> try_target_centroid(const VisualGrid& v);

// Same, but throws NoTarget.
PixelPoint target_centroid_px(const VisualGrid& v);

}  // namespace espush

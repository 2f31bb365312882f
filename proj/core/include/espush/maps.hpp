#pragma once

#include <vector>

#include "espush/grid.hpp"
#include "espush/percept.hpp"

namespace espush {

struct PixelCoord {
  int i = 0;
  int j = 0;

  bool operator==(const PixelCoord&) const = default;
};

// Boundary of the obstacle mask: value-1 pixels with a non-obstacle
// 4-neighbor, or value-1 pixels on the grid border. Row-major order.
struct Contour {
  std::vector<PixelCoord> points;
};

enum class MapKind { kOdt, kLdm, kEsmRaw, kEsmNormalized };

// Square map of distances in pixel units; the normalized kind is in [0, 1].
struct DistanceMap {
  Grid<double> values;
  MapKind kind = MapKind::kOdt;
};

// Crop of the normalized ESM around the target, re-normalized within the
// window; out-of-grid pixels are zero. Window side is parent side / 2, i.e.
// a quarter of the workspace area.
struct LocalMap {
  Grid<double> values;
  int row0 = 0;  // window origin in parent-grid coordinates
  int col0 = 0;
  int parent_side = 0;
};

// Fill value for the obstacle distance transform of an empty contour: the
// grid diagonal, unreachable by any real distance.
inline double empty_contour_sentinel(int side_px) {
  return side_px * 1.4142135623730951;
}

Contour extract_contour(const VisualGrid& v);

// Exact Euclidean distance to the nearest contour point, per pixel. Uses the
// two-pass squared-distance transform; agrees with the brute-force
// min-over-contour to floating-point rounding.
DistanceMap obstacle_distance_map(const Contour& c, int side_px);

// Distance to the nearest workspace edge: min(i, j, side-1-i, side-1-j).
DistanceMap limits_distance_map(int side_px);

struct EsmStages {
  Contour contour;
  DistanceMap odt;
  DistanceMap ldm;
  DistanceMap raw;         // pointwise min(ODT, LDM)
  DistanceMap normalized;  // (raw - min) / (max - min), all zero if flat
};

EsmStages compute_esm_stages(const VisualGrid& v);

// The normalized empty-space map of a scene raster.
DistanceMap empty_space_map(const VisualGrid& v);

// Window centered at the given pixel (typically the rounded target
// centroid).
LocalMap local_empty_space_map(const DistanceMap& esm, int ci, int cj);

}  // namespace espush

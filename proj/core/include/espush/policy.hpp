#pragma once

#include <array>
#include <optional>

#include "espush/maps.hpp"
#include "espush/percept.hpp"
#include "espush/push_sim.hpp"
#include "espush/rng.hpp"

namespace espush {

// Push parameterization: world bearing theta in [-pi, pi) and stroke length
// d in (0, d_max].
struct PushCommand {
  double theta = 0.0;
  double d = 0.0;
};

struct PolicyLimits {
  double d_max = 0.10;
  double d_min = 0.02;
  int patch_px = 6;  // free-patch side for the start-point search

  bool operator==(const PolicyLimits&) const = default;
};

// Greedy rule shared by ES and LES: among pixels whose normalized score
// exceeds 0.9, take the one closest to the target centroid (row-major
// tie-break) and push from the centroid toward it; d is the centroid-to-p*
// distance capped at d_max. `map` may be smaller than the full raster, in
// which case (row0, col0) place it in parent coordinates.
PushCommand decide_from_map(const Grid<double>& map, int row0, int col0,
                            const PixelPoint& centroid_px, double pixel_size,
                            const PolicyLimits& lim);

// Empty-space policy on the full map. Throws NoTarget without target pixels.
PushCommand es_decide(const VisualGrid& v, const PolicyLimits& lim);

// Local variant: same rule on the target-centered crop; falls back to the
// global rule when the crop is degenerate (all zero).
PushCommand les_decide(const VisualGrid& v, const PolicyLimits& lim);

// theta uniform in [-pi, pi), d uniform in [d_min, d_max].
PushCommand random_decide(Rng& rng, const PolicyLimits& lim);

// Start-point search: march one pixel at a time from the target centroid
// along theta + pi, skip target-valued samples, and accept the first
// patch_px x patch_px window of free pixels fully inside the grid. p1 is the
// window center, p2 = p1 + d [cos theta, sin theta], h = target height / 2.
// Returns nullopt when the ray leaves the grid without a free patch.
std::optional<PushSegment> resolve_push_segment(const VisualGrid& v,
                                                const Scene& sc,
                                                const PushCommand& cmd,
                                                const PolicyLimits& lim);

// (theta, d) <-> [-1, 1]^2: theta = pi * u1, d = d_min + (u2+1)/2 (d_max-d_min).
std::array<double, 2> normalize_action(const PushCommand& cmd,
                                       const PolicyLimits& lim);
PushCommand denormalize_action(const std::array<double, 2>& u,
                               const PolicyLimits& lim);

}  // namespace espush

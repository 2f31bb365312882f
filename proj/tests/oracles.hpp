#pragma once

// Independent reference implementations used only to check the library.
// Everything here is written the slow, obvious way on purpose and must stay
// decoupled from the code paths under test.

#include <optional>
#include <vector>

#include "espush/geometry.hpp"
#include "espush/grid.hpp"
#include "espush/maps.hpp"
#include "espush/mlp.hpp"
#include "espush/percept.hpp"

namespace espush::test {

// Overlap by dense point sampling: samples a lattice inside box a and tests
// membership in b (and vice versa). Misses contacts thinner than the lattice
// pitch, so callers compare against SAT with a margin query.
bool overlap_by_sampling(const Obb2& a, const Obb2& b, int samples_per_axis);

// Separation distance by dense boundary sampling of both rectangles.
double separation_by_boundary_sampling(const Obb2& a, const Obb2& b,
                                       int samples_per_edge);

// Eq.-1 style distance transform: per pixel, scan every contour point.
Grid<double> brute_force_odt(const Contour& c, int side_px);

// Re-derives the contour by the 4-neighbor rule straight from the raster.
std::vector<PixelCoord> rescan_contour(const VisualGrid& v);

// Forward pass re-implemented with index-by-index loops.
std::vector<double> loop_mlp_forward(const Mlp& net,
                                     const std::vector<double>& x);

// First free patch along the ray from the centroid in pixel direction
// (di, dj), mirroring the documented search; returns the window's top-left.
std::optional<PixelCoord> scan_first_free_patch(const VisualGrid& v,
                                                const PixelPoint& centroid,
                                                double di, double dj,
                                                int patch_px);

}  // namespace espush::test

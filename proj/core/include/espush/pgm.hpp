#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "espush/grid.hpp"
#include "espush/maps.hpp"
#include "espush/percept.hpp"

namespace espush {

// Binary PGM (P5), maxval 255.
std::vector<std::uint8_t> pgm_encode(const Grid<std::uint8_t>& img);
void write_pgm(const Grid<std::uint8_t>& img, const std::string& path);

// 0 -> 0, 0.5 -> 128, 1 -> 255.
Grid<std::uint8_t> gray_from_visual(const VisualGrid& v);

// Map values scaled to the 0..255 range; unnormalized maps are min-max
// stretched for inspection.
Grid<std::uint8_t> gray_from_map(const DistanceMap& m);
Grid<std::uint8_t> gray_from_local(const LocalMap& m);

}  // namespace espush

#include "espush/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace espush {

namespace {

Grid<std::uint8_t> scale_to_bytes(const Grid<double>& values) {
  const auto [mn_it, mx_it] =
      std::minmax_element(values.cells().begin(), values.cells().end());
  const double mn = *mn_it, mx = *mx_it;
  Grid<std::uint8_t> img(values.side(), 0);
  if (mx > mn) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double t = (values.cells()[k] - mn) / (mx - mn);
      img.cells()[k] = static_cast<std::uint8_t>(std::lround(t * 255.0));
    }
  }
  return img;
}

}  // namespace

std::vector<std::uint8_t> pgm_encode(const Grid<std::uint8_t>& img) {
  const std::string header = "P5\n" + std::to_string(img.side()) + " " +
                             std::to_string(img.side()) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), img.cells().begin(), img.cells().end());
  return bytes;
}

void write_pgm(const Grid<std::uint8_t>& img, const std::string& path) {
  const std::vector<std::uint8_t> bytes = pgm_encode(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Grid<std::uint8_t> gray_from_visual(const VisualGrid& v) {
  Grid<std::uint8_t> img(v.values.side(), 0);
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    const float x = v.values.cells()[k];
    img.cells()[k] = x == kObstacleValue ? 255 : x == kTargetValue ? 128 : 0;
  }
  return img;
}

Grid<std::uint8_t> gray_from_map(const DistanceMap& m) {
  if (m.kind == MapKind::kEsmNormalized) {
    Grid<std::uint8_t> img(m.values.side(), 0);
    for (std::size_t k = 0; k < m.values.size(); ++k) {
      img.cells()[k] = static_cast<std::uint8_t>(
          std::lround(std::clamp(m.values.cells()[k], 0.0, 1.0) * 255.0));
    }
    return img;
  }
  return scale_to_bytes(m.values);
}

Grid<std::uint8_t> gray_from_local(const LocalMap& m) {
  Grid<std::uint8_t> img(m.values.side(), 0);
  for (std::size_t k = 0; k < m.values.size(); ++k) {
    img.cells()[k] = static_cast<std::uint8_t>(
        std::lround(std::clamp(m.values.cells()[k], 0.0, 1.0) * 255.0));
  }
  return img;
}

}  // namespace espush

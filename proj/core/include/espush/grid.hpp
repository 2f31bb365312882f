#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace espush {

// Square row-major grid. Row index i grows downward (world -y), column index
// j grows to the right (world +x).
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(int side, T fill = T{})
      : side_(side),
        cells_(static_cast<std::size_t>(side) * static_cast<std::size_t>(side),
               fill) {}

  int side() const { return side_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int i, int j) const {
    return i >= 0 && i < side_ && j >= 0 && j < side_;
  }

  T& operator()(int i, int j) { return cells_[index(i, j)]; }
  const T& operator()(int i, int j) const { return cells_[index(i, j)]; }

  std::vector<T>& cells() { return cells_; }
  const std::vector<T>& cells() const { return cells_; }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t index(int i, int j) const {
    assert(in_bounds(i, j));
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(j);
  }

  int side_ = 0;
  std::vector<T> cells_;
};

}  // namespace espush

#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace espush {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double squared_norm() const { return x * x + y * y; }
  double norm() const { return std::sqrt(squared_norm()); }

  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double k, const Vec2& v) { return v * k; }

// Oriented 2D box: center, half extents along its local axes, yaw in
// [-pi, pi). Boxes are closed sets, so boundary membership counts as inside
// and touching boundaries count as non-overlapping.
struct Obb2 {
  Vec2 center;
  double hx = 0.0;
  double hy = 0.0;
  double yaw = 0.0;

  bool operator==(const Obb2&) const = default;
};

// Corners in counter-clockwise order starting at the (+x, +y) local corner.
std::array<Vec2, 4> obb_corners(const Obb2& b);

// Closed point membership test.
bool point_in_obb(const Vec2& p, const Obb2& b);

// Minimal translation applied to `a` that separates it from `b`, or nullopt
// when the boxes do not overlap (separating-axis test over the 4 face
// normals). The returned vector points from b to a along the least
// penetrated axis.
std::optional<Vec2> obb_overlap_mtv(const Obb2& a, const Obb2& b);

// Minimum Euclidean distance between the two boundary polygons; 0 when the
// boxes overlap. Symmetric in its arguments.
double obb_separation_distance(const Obb2& a, const Obb2& b);

// Minimum distance between closed segments [a0,a1] and [b0,b1].
double segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                        const Vec2& b1);

// Wraps an angle into [-pi, pi).
double wrap_angle(double a);

}  // namespace espush

#include "espush/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace espush {

namespace {

struct Axes {
  Vec2 u;  // local +x direction
  Vec2 v;  // local +y direction
};

Axes obb_axes(const Obb2& b) {
  const double c = std::cos(b.yaw);
  const double s = std::sin(b.yaw);
  return {{c, s}, {-s, c}};
}

// Projection radius of `b` onto the unit axis `axis`.
double projection_radius(const Obb2& b, const Axes& ax, const Vec2& axis) {
  return b.hx * std::abs(ax.u.dot(axis)) + b.hy * std::abs(ax.v.dot(axis));
}

double clamp01(double t) { return std::clamp(t, 0.0, 1.0); }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squared_norm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = clamp01((p - a).dot(ab) / len2);
  return (p - (a + ab * t)).norm();
}

}  // namespace

std::array<Vec2, 4> obb_corners(const Obb2& b) {
  const Axes ax = obb_axes(b);
  const Vec2 ex = ax.u * b.hx;
  const Vec2 ey = ax.v * b.hy;
  return {b.center + ex + ey, b.center - ex + ey, b.center - ex - ey,
          b.center + ex - ey};
}

bool point_in_obb(const Vec2& p, const Obb2& b) {
  const Axes ax = obb_axes(b);
  const Vec2 d = p - b.center;
  return std::abs(d.dot(ax.u)) <= b.hx && std::abs(d.dot(ax.v)) <= b.hy;
}

std::optional<Vec2> obb_overlap_mtv(const Obb2& a, const Obb2& b) {
  const Axes axa = obb_axes(a);
  const Axes axb = obb_axes(b);
  const std::array<Vec2, 4> axes = {axa.u, axa.v, axb.u, axb.v};
  const Vec2 delta = b.center - a.center;

  double best_pen = std::numeric_limits<double>::infinity();
  Vec2 best_dir;
  for (const Vec2& axis : axes) {
    const double ra = projection_radius(a, axa, axis);
    const double rb = projection_radius(b, axb, axis);
    const double dist = delta.dot(axis);
    const double pen = ra + rb - std::abs(dist);
    if (pen <= 0.0) return std::nullopt;  // separating axis; touching is free
    if (pen < best_pen) {
      best_pen = pen;
      best_dir = dist >= 0.0 ? axis * -1.0 : axis;
    }
  }
  return best_dir * best_pen;
}

double obb_separation_distance(const Obb2& a, const Obb2& b) {
  if (obb_overlap_mtv(a, b)) return 0.0;
  const auto ca = obb_corners(a);
  const auto cb = obb_corners(b);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      best = std::min(best, segment_distance(ca[i], ca[(i + 1) % 4], cb[j],
                                             cb[(j + 1) % 4]));
    }
  }
  return best;
}

double segment_distance(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                        const Vec2& b1) {
  const Vec2 d1 = a1 - a0;
  const Vec2 d2 = b1 - b0;
  const Vec2 r = a0 - b0;
  const double e11 = d1.squared_norm();
  const double e22 = d2.squared_norm();
  const double e12 = d1.dot(d2);
  const double s1 = d1.dot(r);
  const double s2 = d2.dot(r);
  const double den = e11 * e22 - e12 * e12;

  double t = 0.0;
  if (den > 0.0) t = clamp01((e12 * s2 - e22 * s1) / den);
  // closest point on b to a0 + t*d1, then re-clamp on a
  double u = e22 > 0.0 ? clamp01((t * e12 + s2) / e22) : 0.0;
  if (e11 > 0.0) t = clamp01((u * e12 - s1) / e11);

  const Vec2 pa = a0 + d1 * t;
  const Vec2 pb = b0 + d2 * u;
  double best = (pa - pb).norm();
  // endpoint cases guard the clamped solver on parallel or degenerate input
  best = std::min(best, point_segment_distance(a0, b0, b1));
  best = std::min(best, point_segment_distance(a1, b0, b1));
  best = std::min(best, point_segment_distance(b0, a0, a1));
  best = std::min(best, point_segment_distance(b1, a0, a1));
  return best;
}

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  double w = std::remainder(a, 2.0 * pi);  // (-pi, pi]
  if (w >= pi) w = -pi;
  return w;
}

}  // namespace espush

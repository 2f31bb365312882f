#include "espush/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace espush {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Felzenszwalb-Huttenlocher 1D squared-distance transform (lower envelope of
// parabolas rooted at the finite entries of f).
void edt_1d(const std::vector<double>& f, std::vector<double>& d,
            std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[q] == kInf) continue;
    double s;
    for (;;) {
      if (f[v[k]] == kInf) {
        // no finite parabola yet; q becomes the first one
        k = 0;
        v[0] = q;
        z[0] = -kInf;
        z[1] = kInf;
        break;
      }
      s = ((f[q] + static_cast<double>(q) * q) -
           (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
      if (s <= z[k]) {
        --k;
        continue;
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
      break;
    }
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    if (f[v[0]] == kInf) {
      d[q] = kInf;
      continue;
    }
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

Contour extract_contour(const VisualGrid& v) {
  Contour c;
  const int side = v.values.side();
  const auto obstacle = [&](int i, int j) {
    return v.values(i, j) == kObstacleValue;
  };
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      if (!obstacle(i, j)) continue;
      const bool border =
          i == 0 || j == 0 || i == side - 1 || j == side - 1;
      if (border || !obstacle(i - 1, j) || !obstacle(i + 1, j) ||
          !obstacle(i, j - 1) || !obstacle(i, j + 1)) {
        c.points.push_back({i, j});
      }
    }
  }
  return c;
}

DistanceMap obstacle_distance_map(const Contour& c, int side_px) {
  DistanceMap m{Grid<double>(side_px), MapKind::kOdt};
  if (c.points.empty()) {
    std::fill(m.values.cells().begin(), m.values.cells().end(),
              empty_contour_sentinel(side_px));
    return m;
  }

  Grid<double> sq(side_px, kInf);
  for (const PixelCoord& p : c.points) sq(p.i, p.j) = 0.0;

  std::vector<double> f(side_px), d(side_px), z(side_px + 1);
  std::vector<int> v(side_px);
  // columns
  for (int j = 0; j < side_px; ++j) {
    for (int i = 0; i < side_px; ++i) f[i] = sq(i, j);
    edt_1d(f, d, v, z);
    for (int i = 0; i < side_px; ++i) sq(i, j) = d[i];
  }
  // rows
  for (int i = 0; i < side_px; ++i) {
    for (int j = 0; j < side_px; ++j) f[j] = sq(i, j);
    edt_1d(f, d, v, z);
    for (int j = 0; j < side_px; ++j) sq(i, j) = d[j];
  }

  for (int i = 0; i < side_px; ++i)
    for (int j = 0; j < side_px; ++j) m.values(i, j) = std::sqrt(sq(i, j));
  return m;
}

DistanceMap limits_distance_map(int side_px) {
  DistanceMap m{Grid<double>(side_px), MapKind::kLdm};
  for (int i = 0; i < side_px; ++i) {
    for (int j = 0; j < side_px; ++j) {
      m.values(i, j) = std::min(std::min(i, j),
                                std::min(side_px - 1 - i, side_px - 1 - j));
    }
  }
  return m;
}

EsmStages compute_esm_stages(const VisualGrid& v) {
  EsmStages st;
  const int side = v.values.side();
  st.contour = extract_contour(v);
  st.odt = obstacle_distance_map(st.contour, side);
  st.ldm = limits_distance_map(side);

  st.raw.kind = MapKind::kEsmRaw;
  st.raw.values = Grid<double>(side);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      st.raw.values(i, j) = std::min(st.odt.values(i, j), st.ldm.values(i, j));

  const auto [mn_it, mx_it] = std::minmax_element(st.raw.values.cells().begin(),
                                                  st.raw.values.cells().end());
  const double mn = *mn_it, mx = *mx_it;
  st.normalized.kind = MapKind::kEsmNormalized;
  st.normalized.values = Grid<double>(side, 0.0);
  if (mx > mn) {
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < side; ++j)
        st.normalized.values(i, j) = (st.raw.values(i, j) - mn) / (mx - mn);
  }
  return st;
}

DistanceMap empty_space_map(const VisualGrid& v) {
  return compute_esm_stages(v).normalized;
}

LocalMap local_empty_space_map(const DistanceMap& esm, int ci, int cj) {
  const int parent = esm.values.side();
  const int crop = parent / 2;
  LocalMap lm;
  lm.parent_side = parent;
  lm.row0 = ci - crop / 2;
  lm.col0 = cj - crop / 2;
  lm.values = Grid<double>(crop, 0.0);

  for (int i = 0; i < crop; ++i) {
    for (int j = 0; j < crop; ++j) {
      const int pi = lm.row0 + i;
      const int pj = lm.col0 + j;
      if (esm.values.in_bounds(pi, pj)) lm.values(i, j) = esm.values(pi, pj);
    }
  }

  const auto [mn_it, mx_it] =
      std::minmax_element(lm.values.cells().begin(), lm.values.cells().end());
  const double mn = *mn_it, mx = *mx_it;
  if (mx > mn) {
    for (double& x : lm.values.cells()) x = (x - mn) / (mx - mn);
  } else {
    std::fill(lm.values.cells().begin(), lm.values.cells().end(), 0.0);
  }
  return lm;
}

}  // namespace espush

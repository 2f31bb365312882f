#include "espush/push_sim.hpp"

#include <algorithm>
#include <cmath>

namespace espush {

namespace {

bool center_outside(double side, const Vec2& c) {
  const double half = side / 2.0;
  return std::abs(c.x) > half || std::abs(c.y) > half;
}

}  // namespace

PushOutcome execute_push(const Scene& sc, const PushSegment& seg,
                         const SimConfig& cfg, PushDiagnostics* diag) {
  PushOutcome out;
  out.next = sc;
  auto& objects = out.next.objects;
  std::sort(objects.begin(), objects.end(),
            [](const ObjectSpec& a, const ObjectSpec& b) { return a.id < b.id; });

  const Vec2 stroke = seg.p2 - seg.p1;
  const double len = stroke.norm();
  const int n_sub = std::max(1, static_cast<int>(std::ceil(len / cfg.substep)));

  std::vector<int> moved_total;
  const auto mark_moved = [&moved_total](int id) {
    if (!std::binary_search(moved_total.begin(), moved_total.end(), id)) {
      moved_total.insert(
          std::lower_bound(moved_total.begin(), moved_total.end(), id), id);
    }
  };

  // k = 0 places the finger at p1 so that a misjudged start pose is resolved
  // before the stroke begins.
  for (int k = 0; k <= n_sub; ++k) {
    const Vec2 fpos = seg.p1 + stroke * (static_cast<double>(k) / n_sub);
    const Obb2 finger{fpos, cfg.finger_half_extent, cfg.finger_half_extent,
                      0.0};

    std::vector<Vec2> start_pos(objects.size());
    for (std::size_t i = 0; i < objects.size(); ++i)
      start_pos[i] = objects[i].footprint.center;

    // finger contact: only objects the finger cannot pass above
    std::vector<bool> moved_now(objects.size(), false);
    for (std::size_t i = 0; i < objects.size(); ++i) {
      ObjectSpec& obj = objects[i];
      if (obj.height <= seg.h) continue;
      if (auto mtv = obb_overlap_mtv(obj.footprint, finger)) {
        obj.footprint.center += *mtv;
        moved_now[i] = true;
        mark_moved(obj.id);
      }
    }

    // object-object chains
    bool clean = false;
    for (int pass = 0; pass < cfg.relax_iters && !clean; ++pass) {
      clean = true;
      for (std::size_t i = 0; i + 1 < objects.size(); ++i) {
        for (std::size_t j = i + 1; j < objects.size(); ++j) {
          auto mtv =
              obb_overlap_mtv(objects[j].footprint, objects[i].footprint);
          if (!mtv) continue;
          clean = false;
          // the object that moved shoves the other; with no mover (or two)
          // the higher id yields
          if (moved_now[i] && !moved_now[j]) {
            objects[j].footprint.center += *mtv;
            moved_now[j] = true;
            mark_moved(objects[j].id);
          } else if (moved_now[j] && !moved_now[i]) {
            objects[i].footprint.center += *mtv * -1.0;
            moved_now[i] = true;
            mark_moved(objects[i].id);
          } else {
            objects[j].footprint.center += *mtv;
            moved_now[j] = true;
            mark_moved(objects[j].id);
          }
        }
      }
    }
    if (!clean) {
      double worst = 0.0;
      for (std::size_t i = 0; i + 1 < objects.size(); ++i) {
        for (std::size_t j = i + 1; j < objects.size(); ++j) {
          if (auto mtv = obb_overlap_mtv(objects[i].footprint,
                                         objects[j].footprint)) {
            worst = std::max(worst, mtv->norm());
          }
        }
      }
      out.residual_penetration = std::max(out.residual_penetration, worst);
    }

    if (diag != nullptr) {
      for (std::size_t i = 0; i < objects.size(); ++i) {
        const double moved_by =
            (objects[i].footprint.center - start_pos[i]).norm();
        diag->max_substep_displacement =
            std::max(diag->max_substep_displacement, moved_by);
      }
    }

    // fall-off: center past the table edge removes the object immediately
    for (std::size_t i = objects.size(); i-- > 0;) {
      if (center_outside(out.next.side, objects[i].footprint.center)) {
        out.fell_off_ids.push_back(objects[i].id);
        if (objects[i].role == ObjectRole::kTarget) out.target_fell = true;
        objects.erase(objects.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  if (diag != nullptr) diag->substeps = n_sub + 1;
  std::sort(out.fell_off_ids.begin(), out.fell_off_ids.end());
  out.moved_ids = std::move(moved_total);
  return out;
}

}  // namespace espush

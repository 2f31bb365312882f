#pragma once

#include <vector>

#include "espush/scene.hpp"

namespace espush {

// World-frame push stroke at constant height h above the table.
struct PushSegment {
  Vec2 p1;
  Vec2 p2;
  double h = 0.0;
};

struct SimConfig {
  double finger_half_extent = 0.01;  // finger footprint is an axis-aligned square
  double substep = 0.002;            // finger advance per substep, meters
  int relax_iters = 10;              // object-object separation passes per substep

  bool operator==(const SimConfig&) const = default;
};

struct PushOutcome {
  Scene next;
  std::vector<int> moved_ids;     // ascending; every object that moved at all
  std::vector<int> fell_off_ids;  // ascending; absent from next.objects
  bool target_fell = false;
  // Largest unresolved object-object penetration, > 0 only when relax_iters
  // ran out on some substep.
  double residual_penetration = 0.0;
};

struct PushDiagnostics {
  int substeps = 0;
  double max_substep_displacement = 0.0;  // over all objects and substeps
};

// Sweeps the finger square from p1 to p2 in ceil(|p2-p1|/substep) equal
// increments. Per substep: objects taller than seg.h overlapping the finger
// are translated out by their MTV, then object-object overlaps are relaxed
// pairwise (the object that moved shoves the other), then any object whose
// center left the workspace is dropped. Deterministic: objects are visited
// in ascending id order and all draws are input-driven.
PushOutcome execute_push(const Scene& sc, const PushSegment& seg,
                         const SimConfig& cfg,
                         PushDiagnostics* diag = nullptr);

}  // namespace espush

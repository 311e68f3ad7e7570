#pragma once

#include <stdexcept>
#include <vector>

#include "groupdyn/model.hpp"

namespace groupdyn {

struct LadderLevel {
  double contention_scale;
  int integer_mode;
};

/// Sequence of contention scales generated by inverting the mode equation:
/// a level whose mode sits at m is capped by the next scale up,
/// N' = 4*beta*(N - 1). The asymptotic scale ratio is 4*beta.
struct HierarchyLadder {
  GroupScalingParams params;
  std::vector<LadderLevel> levels;
};

inline HierarchyLadder ladder(const GroupScalingParams& params,
                              double seed_scale, int levels) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (!(seed_scale > 1.0)) {
    throw std::invalid_argument("seed_scale must be > 1");
  }
  HierarchyLadder out{params, {}};
  out.levels.reserve(static_cast<std::size_t>(levels));
  double scale = seed_scale;
  for (int k = 0; k < levels; ++k) {
    if (k > 0) {
      const double next = 4.0 * params.beta * (scale - 1.0);
      if (!(next > scale)) {
        throw std::domain_error(
            "ladder recursion is non-increasing for these parameters");
      }
      scale = next;
    }
    const GroupScalingParams level_params{params.beta, scale};
    out.levels.push_back({scale, integer_mode(level_params)});
  }
  return out;
}

}  // namespace groupdyn

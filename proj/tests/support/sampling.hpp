#pragma once

// Test-only synthetic data: i.i.d. group sizes drawn from the discrete mass
// psi(n)/Z by inverse-CDF lookup. Kept out of the library so fits are
// checked against draws produced by an independent code path.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "groupdyn/fit.hpp"
#include "groupdyn/model.hpp"
#include "groupdyn/rng.hpp"

namespace groupdyn::testsupport {

inline Observations draw_observations(const GroupScalingParams& params,
                                      std::uint64_t n_draws,
                                      std::uint64_t seed, int n_max = 0) {
  if (n_max == 0) n_max = default_n_max_cut(params);
  std::vector<double> cumulative;
  cumulative.reserve(static_cast<std::size_t>(n_max - 1));
  double acc = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    acc += psi(static_cast<double>(n), params);
    cumulative.push_back(acc);
  }
  Rng rng(seed);
  Observations obs;
  for (std::uint64_t i = 0; i < n_draws; ++i) {
    const double u = rng.uniform_open() * acc;
    const auto it =
        std::lower_bound(cumulative.begin(), cumulative.end(), u);
    const int n = 2 + static_cast<int>(std::distance(cumulative.begin(), it));
    obs.add(std::min(n, n_max), 1);
  }
  return obs;
}

}  // namespace groupdyn::testsupport

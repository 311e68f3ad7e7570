// End-to-end tour: evaluate the density, derive the scaling ladder, run the
// simulator against its stationary law, and fit synthetic counts.

#include <cstdio>

#include "groupdyn/groupdyn.hpp"

int main() {
  using namespace groupdyn;

  const GroupScalingParams params{1.0, 8.0};
  std::printf("density psi(n) at beta=%.3g, n_t=%.3g\n", params.beta,
              params.n_t);
  for (int n = 1; n <= 8; ++n) {
    std::printf("  n=%d  psi=%.6f\n", n, psi(n, params));
  }
  std::printf("continuous mode: %.3f, integer mode: %d\n",
              continuous_mode(params), integer_mode(params));

  std::printf("\nscaling ladder from seed 8:\n");
  for (const auto& level : ladder(params, 8.0, 5).levels) {
    std::printf("  scale %8.2f -> mode %d\n", level.contention_scale,
                level.integer_mode);
  }

  SimConfig sim{params};
  sim.event_budget = 500000;
  sim.burn_in = 5000;
  sim.master_seed = 17;
  const auto result = run(sim);
  const double tv =
      tv_distance(result.histogram, stationary_reference(sim), sim.n_min);
  std::printf("\nsimulated %llu events; TV distance to stationary law: %.4f\n",
              static_cast<unsigned long long>(sim.event_budget), tv);

  Observations obs;
  for (const auto& [n, w] : result.histogram.counts) {
    const auto c = static_cast<std::uint64_t>(w * 10.0);
    if (c > 0) obs.add(n, c);
  }
  FitConfig fit_config;
  fit_config.n_t_lo = 4.0;
  fit_config.n_t_hi = 200.0;
  const auto fitted = fit(obs, fit_config);
  std::printf("fit: beta_hat=%.4f n_t_hat=%.2f ratio=%.4f implied mode=%d\n",
              fitted.beta_hat, fitted.n_t_hat, fitted.ratio_hat,
              fitted.implied_mode);

  std::printf("\ncooperation triangle promises:\n");
  const auto graph = cooperation_triangle("A1", "A2", "Seed", "X", "Y");
  for (const auto& p : graph.promises) {
    std::printf("  %s -> %s:", p.from.c_str(), p.to.c_str());
    for (const auto& atom : p.body) {
      std::printf(" %c%s", polarity_sign(atom.polarity),
                  atom.topics.front().c_str());
      if (atom.condition) std::printf("|%s", atom.condition->c_str());
    }
    std::printf("\n");
  }
  std::printf("hub cost at n=150: %lld, mesh cost: %lld\n",
              static_cast<long long>(coordination_cost(Topology::hub, 150)),
              static_cast<long long>(coordination_cost(Topology::mesh, 150)));
  return 0;
}

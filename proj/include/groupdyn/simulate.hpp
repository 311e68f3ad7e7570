#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupdyn/model.hpp"
#include "groupdyn/rng.hpp"

namespace groupdyn {

/// Continuous-time birth-death process on group sizes [n_min, n_cap].
/// Joins arrive at constant rate lambda0 while below the cap; leave rates
/// are fixed by detailed balance against psi, making the truncated,
/// normalized psi the exact stationary law.
struct SimConfig {
  GroupScalingParams params;
  double join_rate_lambda0 = 1.0;
  int n_min = 2;
  int n_cap = 0;  // 0: derived from the mode plus a 20-sigma-wide margin
  std::uint64_t event_budget = 100000;
  std::uint64_t burn_in = 0;
  std::uint64_t master_seed = 0;
  int replicas = 1;
  bool capture_log = false;

  explicit SimConfig(GroupScalingParams p) : params(p) {
    n_cap = default_cap(p);
  }

  static int default_cap(const GroupScalingParams& p) {
    const double cap =
        std::ceil(continuous_mode(p) + 20.0 * std::sqrt(p.n_t / p.beta));
    return static_cast<int>(std::min(cap, 1e8));
  }

  void validate() const {
    if (n_min != 2) throw std::invalid_argument("n_min is fixed at 2");
    if (n_cap < 3) throw std::invalid_argument("n_cap must be >= 3");
    if (!(join_rate_lambda0 > 0.0)) {
      throw std::invalid_argument("join rate lambda0 must be > 0");
    }
    if (event_budget < 1 || event_budget <= burn_in) {
      throw std::invalid_argument("event_budget must exceed burn_in");
    }
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  }
};

struct GroupState {
  int size;
  std::uint64_t clock = 0;
};

enum class Transition { join, leave };

struct EventRecord {
  std::uint64_t ordinal;
  Transition transition;
  int size_before;
  int size_after;
  double dt;
};

using EventLog = std::vector<EventRecord>;

/// Occupancy histogram over group sizes. Weights are sojourn times, so the
/// histogram estimates the time-stationary law of the chain.
struct Histogram {
  std::map<int, double> counts;
  double total = 0.0;
  std::string weighting = "time";

  void add(int n, double weight) {
    counts[n] += weight;
    total += weight;
  }

  void merge(const Histogram& other) {
    for (const auto& [n, w] : other.counts) counts[n] += w;
    total += other.total;
  }
};

/// Leave rate mu(n) solving detailed balance p(n-1) lambda0 = p(n) mu(n)
/// with p proportional to psi. Size 2 is a reflecting floor (psi(1) = 0).
inline double leave_rate(int n, const SimConfig& config) {
  if (n < config.n_min || n > config.n_cap) {
    throw std::domain_error("leave_rate: size outside [n_min, n_cap]");
  }
  if (n == 2) return 0.0;
  const double ratio = std::sqrt((n - 2.0) / (n - 1.0));
  return config.join_rate_lambda0 *
         ratio * std::exp(2.0 * config.params.beta / config.params.n_t);
}

/// One jump of the chain: exponential waiting time at the total exit rate,
/// then a join with probability lambda / (lambda + mu).
inline EventRecord step(GroupState& state, const SimConfig& config, Rng& rng) {
  const double lambda =
      state.size < config.n_cap ? config.join_rate_lambda0 : 0.0;
  const double mu = leave_rate(state.size, config);
  const double total = lambda + mu;
  if (!(total > 0.0)) {
    throw std::logic_error("no enabled transition; config is unsatisfiable");
  }
  const double dt = rng.exponential(total);
  const bool join = rng.bernoulli(lambda / total);
  EventRecord rec;
  rec.ordinal = state.clock;
  rec.transition = join ? Transition::join : Transition::leave;
  rec.size_before = state.size;
  rec.size_after = state.size + (join ? 1 : -1);
  rec.dt = dt;
  state.size = rec.size_after;
  state.clock += 1;
  return rec;
}

/// Truncated, normalized psi over [n_min, n_cap]: the exact stationary law
/// of the chain and the oracle the empirical histogram must approach.
inline std::vector<double> stationary_reference(const SimConfig& config) {
  config.validate();
  const double z =
      discrete_normalizer(config.params, config.n_min, config.n_cap);
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(config.n_cap - config.n_min + 1));
  for (int n = config.n_min; n <= config.n_cap; ++n) {
    mass.push_back(psi(static_cast<double>(n), config.params) / z);
  }
  return mass;
}

struct SimResult {
  Histogram histogram;
  EventLog log;  // replica 0 only, and only when capture_log is set
};

/// Runs `replicas` independent chains of event_budget jumps each from size
/// n_min, discarding the first burn_in sojourns, and merges the
/// time-weighted occupancy histograms.
inline SimResult run(const SimConfig& config) {
  config.validate();
  SimResult result;
  for (int r = 0; r < config.replicas; ++r) {
    Rng rng(replica_seed(config.master_seed, static_cast<std::uint64_t>(r)));
    GroupState state{config.n_min};
    Histogram hist;
    const bool log_this = config.capture_log && r == 0;
    for (std::uint64_t e = 0; e < config.event_budget; ++e) {
      const int before = state.size;
      const EventRecord rec = step(state, config, rng);
      if (e >= config.burn_in) hist.add(before, rec.dt);
      if (log_this) result.log.push_back(rec);
    }
    result.histogram.merge(hist);
  }
  return result;
}

/// Total-variation distance between the (normalized) histogram and a
/// reference mass over [n_min, n_min + mass.size()).
inline double tv_distance(const Histogram& hist,
                          const std::vector<double>& reference_mass,
                          int n_min) {
  if (!(hist.total > 0.0)) {
    throw std::invalid_argument("histogram has no weight");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < reference_mass.size(); ++i) {
    const int n = n_min + static_cast<int>(i);
    const auto it = hist.counts.find(n);
    const double observed = it == hist.counts.end() ? 0.0 : it->second;
    acc += std::abs(observed / hist.total - reference_mass[i]);
  }
  for (const auto& [n, w] : hist.counts) {
    if (n < n_min || n >= n_min + static_cast<int>(reference_mass.size())) {
      acc += w / hist.total;
    }
  }
  return 0.5 * acc;
}

}  // namespace groupdyn

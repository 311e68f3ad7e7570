#pragma once

#include <cmath>
#include <stdexcept>

namespace groupdyn {

/// Constants of the grooming-work budget. Only the ratio C = c2/c0 enters
/// the dynamics; c0 and c2 are kept separate for traceability, and c1 is
/// identically zero (a lone agent spends nothing on group attention).
struct WorkShareParams {
  double w_max;
  double m_ratio;   // involvement cost m / m_min, >= 1
  double v_ratio;   // attention rate v / v_max, in [0, 1]
  double c0;
  double c2;
  static constexpr double c1 = 0.0;

  WorkShareParams(double w_max_, double m_ratio_, double v_ratio_, double c0_,
                  double c2_)
      : w_max(w_max_), m_ratio(m_ratio_), v_ratio(v_ratio_), c0(c0_), c2(c2_) {
    if (!(w_max > 0.0)) throw std::invalid_argument("w_max must be > 0");
    if (!(m_ratio >= 1.0)) throw std::invalid_argument("m_ratio must be >= 1");
    if (!(v_ratio >= 0.0 && v_ratio <= 1.0)) {
      throw std::invalid_argument("v_ratio must lie in [0, 1]");
    }
    if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be > 0");
    if (!(c2 >= 0.0)) throw std::invalid_argument("c2 must be >= 0");
  }

  double contention_scale_ratio() const { return c2 / c0; }
};

struct ChannelCapacityParams {
  double bandwidth_b;
  double contention_cost;

  ChannelCapacityParams(double bandwidth_b_, double contention_cost_)
      : bandwidth_b(bandwidth_b_), contention_cost(contention_cost_) {
    if (!(bandwidth_b > 0.0) || !(contention_cost > 0.0)) {
      throw std::invalid_argument(
          "bandwidth and contention cost must be > 0");
    }
  }
};

/// Per-member slice of a saturated attention budget: W_max / n.
inline double work_share(int n, double w_max) {
  if (n < 1) throw std::invalid_argument("work_share needs n >= 1");
  if (!(w_max > 0.0)) throw std::invalid_argument("w_max must be > 0");
  return w_max / static_cast<double>(n);
}

/// Attention work of one agent in a group of n: C * (n - 1) / n_beta,
/// linear in the number of others it grooms.
inline double agent_work(int n, const WorkShareParams& p, double n_beta) {
  if (n < 1) throw std::invalid_argument("agent_work needs n >= 1");
  if (!(n_beta > 0.0)) throw std::invalid_argument("n_beta must be > 0");
  return p.contention_scale_ratio() * static_cast<double>(n - 1) / n_beta;
}

/// Maximum-entropy occupation weight exp(-C (n-1) / n_beta); equals 1 for a
/// lone agent and for contention-free coupling (C = 0).
inline double max_entropy_weight(int n, double contention_c, double n_beta) {
  if (n < 1) throw std::invalid_argument("max_entropy_weight needs n >= 1");
  if (!(contention_c >= 0.0)) throw std::invalid_argument("C must be >= 0");
  if (!(n_beta > 0.0)) throw std::invalid_argument("n_beta must be > 0");
  return std::exp(-contention_c * static_cast<double>(n - 1) / n_beta);
}

/// Shannon capacity diagnostic: B log(1 + W(agent) / contention cost).
inline double channel_capacity(double w_agent,
                               const ChannelCapacityParams& p) {
  if (!(w_agent >= 0.0)) throw std::invalid_argument("w_agent must be >= 0");
  return p.bandwidth_b * std::log(1.0 + w_agent / p.contention_cost);
}

}  // namespace groupdyn

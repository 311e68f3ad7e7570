#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "groupdyn/ladder.hpp"
#include "groupdyn/model.hpp"

namespace groupdyn {

/// Observed group-size histogram: counts per integer size n >= 2.
struct Observations {
  std::map<int, std::uint64_t> counts;
  std::uint64_t total_groups = 0;

  void add(int n, std::uint64_t count) {
    if (n < 2) throw std::invalid_argument("observed sizes must be >= 2");
    if (count == 0) return;
    counts[n] += count;
    total_groups += count;
  }

  int max_size() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
  }
};

enum class FitLoss { mle, least_squares };

struct FitConfig {
  // Default band covers the canonical efficiencies 0.875, 0.93, and 1 that
  // the scaling tables use.
  double beta_lo = 0.875;
  double beta_hi = 1.0;
  double n_t_lo = 4.0;
  double n_t_hi = 2000.0;
  int grid_points = 24;
  double refine_tolerance = 1e-5;
  int n_max_cut = 0;  // 0: derived from the search ranges
  FitLoss loss = FitLoss::mle;

  void validate() const {
    if (!(beta_lo > 0.0) || !(beta_hi <= 1.0) || !(beta_lo < beta_hi)) {
      throw std::invalid_argument("beta range must be non-degenerate in (0, 1]");
    }
    if (!(n_t_lo > 1.0) || !(n_t_lo < n_t_hi)) {
      throw std::invalid_argument(
          "n_t range must be non-degenerate with n_t_lo > 1");
    }
    if (grid_points < 8) throw std::invalid_argument("grid needs >= 8 points per axis");
    if (!(refine_tolerance > 0.0) || refine_tolerance > 1e-2) {
      throw std::invalid_argument("refine tolerance must lie in (0, 1e-2]");
    }
  }

  int resolved_cut(const Observations& obs) const {
    int cut = n_max_cut;
    if (cut == 0) {
      const GroupScalingParams widest{beta_lo, n_t_hi};
      cut = default_n_max_cut(widest);
    }
    if (cut < obs.max_size()) {
      throw std::invalid_argument("n_max_cut is below the largest observed size");
    }
    return cut;
  }
};

struct ChiSquare {
  double statistic;
  int dof;
};

struct GridPoint {
  double beta;
  double n_t;
  double objective;
};

struct FitResult {
  double beta_hat;
  double n_t_hat;
  double ratio_hat;  // 2*beta/n_t, the combination the data identifies
  double log_likelihood;
  std::optional<ChiSquare> chi_square;
  int implied_mode;
  HierarchyLadder implied_ladder;
  GridPoint best_grid;
  GridPoint second_grid;
  int n_max_cut;
};

/// Multinomial log-likelihood of the counts under the discrete mass
/// p(n) = psi(n) / Z with Z summed over [2, n_max_cut].
inline double log_likelihood(const Observations& obs,
                             const GroupScalingParams& params, int n_max_cut) {
  if (obs.total_groups < 1) throw std::invalid_argument("no observations");
  if (obs.max_size() > n_max_cut) {
    throw std::invalid_argument("observed size exceeds n_max_cut");
  }
  const double log_z = std::log(discrete_normalizer(params, 2, n_max_cut));
  double ll = 0.0;
  for (const auto& [n, c] : obs.counts) {
    ll += static_cast<double>(c) *
          (log_psi(static_cast<double>(n), params) - log_z);
  }
  return ll;
}

namespace detail {

// The normalized mass depends on (beta, n_t) only through r = 2*beta/n_t:
// p(n) = sqrt(n-1) exp(-r(n-1)) / S(r). Both the prefactor and the 1/n_t
// amplitude cancel against the normalizer, so the likelihood surface has an
// exactly flat ridge along r = const. All fitting therefore reduces to a
// one-dimensional profile over r.
inline double ridge_normalizer(double r, int n_max_cut) {
  double s = 0.0;
  const double peak = 1.0 + 0.5 / r;  // the summand crests near nu = 1/2
  for (int m = 2; m <= n_max_cut; ++m) {
    const double term = std::sqrt(m - 1.0) * std::exp(-r * (m - 1.0));
    s += term;
    if (static_cast<double>(m) > peak && term < s * 1e-18) break;
  }
  return s;
}

inline double profile_loglik(double r, const Observations& obs,
                             int n_max_cut) {
  double ll = 0.0;
  for (const auto& [n, c] : obs.counts) {
    ll += static_cast<double>(c) *
          (0.5 * std::log(n - 1.0) - r * (n - 1.0));
  }
  return ll - static_cast<double>(obs.total_groups) *
                  std::log(ridge_normalizer(r, n_max_cut));
}

inline double lsq_loss(double r, const Observations& obs, int n_max_cut) {
  const double s = ridge_normalizer(r, n_max_cut);
  const double total = static_cast<double>(obs.total_groups);
  const int max_obs = obs.max_size();
  double loss = 0.0;
  auto it = obs.counts.begin();
  for (int n = 2; n <= n_max_cut; ++n) {
    double f = 0.0;
    if (it != obs.counts.end() && it->first == n) {
      f = static_cast<double>(it->second) / total;
      ++it;
    }
    const double p = std::sqrt(n - 1.0) * std::exp(-r * (n - 1.0)) / s;
    loss += (f - p) * (f - p);
    if (n > max_obs && p < 1e-18) break;
  }
  return loss;
}

// Golden-section maximization on [lo, hi]; assumes a single interior peak.
template <typename F>
double golden_max(F&& f, double lo, double hi, double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while ((b - a) > rel_tol * (std::abs(a) + std::abs(b)) * 0.5) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Pearson chi-square against expected counts total * p(n), with adjacent
/// bins pooled until every expected count reaches 5. The final pooled bin
/// absorbs the model tail out to n_max_cut. dof = pooled bins - 1 - 2.
inline ChiSquare goodness_of_fit(const Observations& obs,
                                 const GroupScalingParams& params,
                                 int n_max_cut) {
  if (obs.total_groups < 1) throw std::invalid_argument("no observations");
  if (obs.max_size() > n_max_cut) {
    throw std::invalid_argument("observed size exceeds n_max_cut");
  }
  const double z = discrete_normalizer(params, 2, n_max_cut);
  const double total = static_cast<double>(obs.total_groups);

  std::vector<double> expected;
  std::vector<double> observed;
  double e_acc = 0.0, o_acc = 0.0;
  auto it = obs.counts.begin();
  for (int n = 2; n <= n_max_cut; ++n) {
    e_acc += total * psi(static_cast<double>(n), params) / z;
    if (it != obs.counts.end() && it->first == n) {
      o_acc += static_cast<double>(it->second);
      ++it;
    }
    if (e_acc >= 5.0) {
      expected.push_back(e_acc);
      observed.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  if (!expected.empty()) {
    expected.back() += e_acc;  // residual tail joins the last bin
    observed.back() += o_acc;
  }
  const int bins = static_cast<int>(expected.size());
  if (bins < 4) {
    throw std::invalid_argument(
        "too few observations to pool: need at least 4 bins with expected "
        "count >= 5");
  }
  double stat = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double d = observed[b] - expected[b];
    stat += d * d / expected[b];
  }
  return {stat, bins - 1 - 2};
}

/// Maximum-likelihood fit of (beta, n_t). Stage one scans a grid over the
/// requested box (beta linear, n_t geometric); stage two refines the
/// identifiable ratio r = 2*beta/n_t by golden section between the
/// neighboring grid ratios. Because the likelihood is exactly flat along
/// r = const, the reported point is the ridge member with beta at the
/// midpoint of the feasible efficiency interval; ratio_hat and the implied
/// mode are the data-determined quantities.
inline FitResult fit(const Observations& obs, const FitConfig& config) {
  config.validate();
  if (obs.counts.size() < 2) {
    throw std::invalid_argument(
        "observations cover a single group size; the distribution is "
        "unidentifiable");
  }
  const int cut = config.resolved_cut(obs);
  const bool mle = config.loss == FitLoss::mle;
  const auto objective = [&](double r) {
    return mle ? detail::profile_loglik(r, obs, cut)
               : -detail::lsq_loss(r, obs, cut);
  };

  // Grid stage.
  const int g = config.grid_points;
  std::vector<double> betas(static_cast<std::size_t>(g));
  std::vector<double> n_ts(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    const double t = static_cast<double>(i) / (g - 1);
    betas[static_cast<std::size_t>(i)] =
        config.beta_lo + t * (config.beta_hi - config.beta_lo);
    n_ts[static_cast<std::size_t>(i)] =
        config.n_t_lo * std::pow(config.n_t_hi / config.n_t_lo, t);
  }
  GridPoint best{0.0, 0.0, -std::numeric_limits<double>::infinity()};
  GridPoint second = best;
  std::vector<double> grid_ratios;
  grid_ratios.reserve(static_cast<std::size_t>(g) * static_cast<std::size_t>(g));
  for (double beta : betas) {
    for (double n_t : n_ts) {
      const double r = 2.0 * beta / n_t;
      grid_ratios.push_back(r);
      const double value = objective(r);
      if (value > best.objective) {
        second = best;
        best = {beta, n_t, value};
      } else if (value > second.objective) {
        second = {beta, n_t, value};
      }
    }
  }

  // Refine r between the grid ratios adjacent to the winner.
  std::sort(grid_ratios.begin(), grid_ratios.end());
  const double r_best = 2.0 * best.beta / best.n_t;
  const auto pos =
      std::lower_bound(grid_ratios.begin(), grid_ratios.end(), r_best);
  const std::size_t k =
      static_cast<std::size_t>(std::distance(grid_ratios.begin(), pos));
  const double r_lo = k == 0 ? grid_ratios.front() : grid_ratios[k - 1];
  const double r_hi =
      k + 1 >= grid_ratios.size() ? grid_ratios.back() : grid_ratios[k + 1];
  const double r_hat =
      r_lo < r_hi
          ? detail::golden_max(objective, r_lo, r_hi, config.refine_tolerance)
          : r_best;

  // Ridge resolution: efficiencies consistent with the box at this ratio.
  const double feas_lo = std::max(config.beta_lo, 0.5 * r_hat * config.n_t_lo);
  const double feas_hi = std::min(config.beta_hi, 0.5 * r_hat * config.n_t_hi);
  const double beta_hat = std::clamp(0.5 * (feas_lo + feas_hi),
                                     config.beta_lo, config.beta_hi);
  const double n_t_hat =
      std::clamp(2.0 * beta_hat / r_hat, config.n_t_lo, config.n_t_hi);

  const GroupScalingParams estimate{beta_hat, n_t_hat};
  HierarchyLadder implied{estimate, {}};
  try {
    implied = ladder(estimate, n_t_hat, 4);
  } catch (const std::domain_error&) {
    // the recursion does not increase at this efficiency; keep the seed level
    implied = ladder(estimate, n_t_hat, 1);
  }
  FitResult result{
      beta_hat,
      n_t_hat,
      r_hat,
      log_likelihood(obs, estimate, cut),
      std::nullopt,
      integer_mode(estimate),
      std::move(implied),
      best,
      second,
      cut,
  };
  try {
    result.chi_square = goodness_of_fit(obs, estimate, cut);
  } catch (const std::invalid_argument&) {
    // Too little data to pool; the point estimates stand on their own.
  }
  return result;
}

}  // namespace groupdyn

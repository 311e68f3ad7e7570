#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "groupdyn/numerics.hpp"

namespace groupdyn {

/// Parameter pair of the group-size law: promise-keeping efficiency beta
/// in (0, 1] and the contention scale n_t > 0 (the group size at which
/// intra-group contention cost peaks).
struct GroupScalingParams {
  double beta;
  double n_t;

  GroupScalingParams(double beta_, double n_t_) : beta(beta_), n_t(n_t_) {
    if (!std::isfinite(beta) || !(beta > 0.0) || beta > 1.0) {
      throw std::invalid_argument("beta must be finite and in (0, 1]");
    }
    if (!std::isfinite(n_t) || !(n_t > 0.0)) {
      throw std::invalid_argument("n_t must be finite and > 0");
    }
  }
};

/// Dimensionless scaled group variable nu = 2*beta*(n-1)/n_t.
struct ScaledContention {
  double nu;
};

inline ScaledContention scaled_nu(double n, const GroupScalingParams& p) {
  if (!(n >= 1.0)) {
    throw std::domain_error("group size n must be >= 1");
  }
  return {2.0 * p.beta * (n - 1.0) / p.n_t};
}

/// Group-size frequency density psi(n) = (4/sqrt(pi)) sqrt(nu) exp(-nu) / n_t.
/// Zero at n = 1, unimodal, exponentially decaying tail.
inline double psi(double n, const GroupScalingParams& p) {
  const double nu = scaled_nu(n, p).nu;
  return four_over_sqrt_pi * std::sqrt(nu) * std::exp(-nu) / p.n_t;
}

/// log psi(n); requires n > 1 where the density is positive.
inline double log_psi(double n, const GroupScalingParams& p) {
  const double nu = scaled_nu(n, p).nu;
  if (nu <= 0.0) throw std::domain_error("log_psi requires n > 1");
  return std::log(four_over_sqrt_pi) + 0.5 * std::log(nu) - nu -
         std::log(p.n_t);
}

/// Real-valued argmax of psi: n* = 1 + n_t / (4 beta), i.e. nu(n*) = 1/2.
inline double continuous_mode(const GroupScalingParams& p) {
  return 1.0 + p.n_t / (4.0 * p.beta);
}

/// Truncation point beyond which the tail mass is negligible (< 1e-10).
inline int default_n_max_cut(const GroupScalingParams& p) {
  const double by_scale = 50.0 * p.n_t / p.beta;
  const double cut = std::ceil(std::clamp(by_scale, 1e4, 1e8));
  return static_cast<int>(cut);
}

/// Discrete argmax of psi over integer n in [n_min, n_max_cut].
/// Ties break toward the smaller group size.
inline int integer_mode(const GroupScalingParams& p, int n_min, int n_max_cut) {
  if (n_min < 2) throw std::invalid_argument("n_min must be >= 2");
  if (n_max_cut <= n_min) {
    throw std::invalid_argument("empty integer-mode range");
  }
  int best_n = n_min;
  double best = psi(static_cast<double>(n_min), p);
  const double mode = continuous_mode(p);
  for (int n = n_min + 1; n <= n_max_cut; ++n) {
    const double v = psi(static_cast<double>(n), p);
    if (v > best) {
      best = v;
      best_n = n;
    }
    // psi is unimodal: once past the continuous mode the scan is settled.
    if (static_cast<double>(n) > mode && v < best) break;
  }
  return best_n;
}

inline int integer_mode(const GroupScalingParams& p) {
  return integer_mode(p, 2, default_n_max_cut(p));
}

/// Numerically integrates psi over [1, inf); the analytic value is 1/beta
/// for every n_t. Integrates in t = sqrt(n - 1) to remove the root-branch
/// endpoint at n = 1, with an upper limit chosen from the exponential tail
/// bound so the truncated mass stays below tolerance/10.
inline double normalization_integral(const GroupScalingParams& p,
                                     double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  const double r = 2.0 * p.beta / p.n_t;
  // Tail bound: integral of psi beyond U is below (4/sqrt(pi)) sqrt(nu(U))
  //   exp(-nu(U)) / beta for nu(U) >= 1.
  double nu_cut = 2.0;
  while (four_over_sqrt_pi * std::sqrt(nu_cut) * std::exp(-nu_cut) / p.beta >
         0.1 * tolerance) {
    nu_cut *= 2.0;
  }
  const double t_max = std::sqrt(nu_cut / r);
  const auto integrand = [&](double t) {
    const double n = 1.0 + t * t;
    return psi(n, p) * 2.0 * t;
  };
  return integrate(integrand, 0.0, t_max, 0.5 * tolerance);
}

/// Z = sum of psi(n) over integer n in [n_min, n_max_cut]; the normalizer
/// that turns psi into the probability mass p(n) = psi(n) / Z.
inline double discrete_normalizer(const GroupScalingParams& p, int n_min,
                                  int n_max_cut) {
  if (n_min < 2 || n_max_cut < n_min) {
    throw std::invalid_argument(
        "normalizer range requires 2 <= n_min <= n_max_cut");
  }
  double z = 0.0;
  for (int n = n_min; n <= n_max_cut; ++n) {
    z += psi(static_cast<double>(n), p);
  }
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw std::runtime_error(
        "discrete normalizer underflowed; shrink [n_min, n_max_cut] toward "
        "the mode");
  }
  return z;
}

}  // namespace groupdyn

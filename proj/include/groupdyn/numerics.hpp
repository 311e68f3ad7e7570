#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace groupdyn {

inline const double four_over_sqrt_pi = 4.0 / std::sqrt(std::numbers::pi);

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double fa, double b, double fb,
                                   double m, double fm, double whole,
                                   double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw std::runtime_error("adaptive quadrature failed to converge");
  }
  if (std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 60) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol,
                                      max_depth);
}

namespace detail {

// Series expansion of the regularized lower incomplete gamma, for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_p series did not converge");
}

// Continued fraction (modified Lentz) for the regularized upper tail, x >= a + 1.
inline double gamma_q_cf(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("gamma_q continued fraction did not converge");
}

}  // namespace detail

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
inline double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return detail::gamma_p_series(a, x);
  return 1.0 - detail::gamma_q_cf(a, x);
}

inline double gamma_q(double a, double x) { return 1.0 - gamma_p(a, x); }

// CDF of the chi-square distribution with dof degrees of freedom.
inline double chi_square_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_cdf: dof >= 1");
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * dof, 0.5 * x);
}

}  // namespace groupdyn

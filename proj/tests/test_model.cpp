#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "groupdyn/model.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using groupdyn::GroupScalingParams;

TEST_CASE("parameter invariants are enforced") {
  CHECK_NOTHROW(GroupScalingParams(1.0, 8.0));
  CHECK_NOTHROW(GroupScalingParams(0.01, 1e6));
  CHECK_THROWS_AS(GroupScalingParams(0.0, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(GroupScalingParams(1.5, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(GroupScalingParams(-0.5, 8.0), std::invalid_argument);
  CHECK_THROWS_AS(GroupScalingParams(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GroupScalingParams(1.0, -3.0), std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(GroupScalingParams(1.0, inf), std::invalid_argument);
}

TEST_CASE("scaled nu") {
  CHECK(groupdyn::scaled_nu(1.0, {0.4, 17.0}).nu == 0.0);
  CHECK_THAT(groupdyn::scaled_nu(3.0, {1.0, 8.0}).nu, WithinRel(0.5, 1e-15));
  CHECK_THAT(groupdyn::scaled_nu(14.0, {0.875, 45.5}).nu,
             WithinRel(0.5, 1e-15));
  CHECK_THROWS_AS(groupdyn::scaled_nu(0.999, {1.0, 8.0}), std::domain_error);
}

TEST_CASE("psi matches the high-precision oracle") {
  const GroupScalingParams p{1.0, 8.0};
  CHECK(groupdyn::psi(1.0, p) == 0.0);
  // mpmath, 30 digits
  CHECK_THAT(groupdyn::psi(2.0, p), WithinRel(0.109847822366930599, 1e-14));
  CHECK_THAT(groupdyn::psi(3.0, p), WithinRel(0.120985362259571675, 1e-14));
  CHECK_THAT(groupdyn::psi(4.0, p), WithinRel(0.115399742104091445, 1e-14));
  CHECK_THAT(groupdyn::psi(14.0, {0.875, 45.5}),
             WithinRel(0.021272151606078536, 1e-14));
  CHECK(groupdyn::psi(1e9, p) == 0.0);  // tail underflows cleanly
  CHECK_THROWS_AS(groupdyn::psi(0.5, p), std::domain_error);
}

TEST_CASE("psi is nonnegative and unimodal") {
  const GroupScalingParams p{0.93, 52.0};
  const double mode = groupdyn::continuous_mode(p);
  double prev = groupdyn::psi(1.0, p);
  for (double n = 1.05; n < mode; n += 0.05) {
    const double v = groupdyn::psi(n, p);
    CHECK(v >= 0.0);
    CHECK(v > prev);  // strictly increasing below the mode
    prev = v;
  }
  prev = groupdyn::psi(mode, p);
  for (double n = mode + 0.05; n < mode + 40.0; n += 0.05) {
    const double v = groupdyn::psi(n, p);
    CHECK(v < prev);  // strictly decreasing above
    prev = v;
  }
}

TEST_CASE("log_psi agrees with log of psi") {
  const GroupScalingParams p{0.7, 33.0};
  for (double n : {2.0, 3.5, 10.0, 100.0}) {
    CHECK_THAT(groupdyn::log_psi(n, p),
               WithinRel(std::log(groupdyn::psi(n, p)), 1e-12));
  }
  CHECK_THROWS_AS(groupdyn::log_psi(1.0, p), std::domain_error);
}

TEST_CASE("continuous mode and its table values") {
  CHECK_THAT(groupdyn::continuous_mode({1.0, 8.0}), WithinRel(3.0, 1e-15));
  CHECK_THAT(groupdyn::continuous_mode({0.875, 14.0}), WithinRel(5.0, 1e-15));
  CHECK_THAT(groupdyn::continuous_mode({0.93, 697.0}),
             WithinRel(188.36559139784946, 1e-14));
}

TEST_CASE("continuous mode coincides with the numeric argmax of psi") {
  for (const auto& p :
       {GroupScalingParams{1.0, 8.0}, GroupScalingParams{0.875, 542.0},
        GroupScalingParams{0.5, 40.0}}) {
    const double analytic = groupdyn::continuous_mode(p);
    // golden-section argmax over a wide bracket
    double a = 1.0, b = analytic * 3.0;
    constexpr double inv_phi = 0.6180339887498949;
    while (b - a > 1e-9 * analytic) {
      const double x1 = b - inv_phi * (b - a);
      const double x2 = a + inv_phi * (b - a);
      if (groupdyn::psi(x1, p) < groupdyn::psi(x2, p)) {
        a = x1;
      } else {
        b = x2;
      }
    }
    CHECK_THAT(0.5 * (a + b), WithinRel(analytic, 1e-6));
  }
}

TEST_CASE("integer mode reproduces the scaling table") {
  CHECK(groupdyn::integer_mode({1.0, 8.0}, 2, 1000) == 3);
  CHECK(groupdyn::integer_mode({1.0, 4.0}, 2, 1000) == 2);
  const int m = groupdyn::integer_mode({0.875, 542.0}, 2, 5000);
  CHECK(m >= 155);
  CHECK(m <= 157);
  CHECK_THROWS_AS(groupdyn::integer_mode({1.0, 8.0}, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(groupdyn::integer_mode({1.0, 8.0}, 1, 10),
                  std::invalid_argument);
}

TEST_CASE("integer mode is invariant under positive rescaling") {
  // argmax of psi equals argmax of c*psi; scan a rescaled copy by hand
  const GroupScalingParams p{0.93, 52.0};
  const int direct = groupdyn::integer_mode(p, 2, 500);
  int best_n = 2;
  double best = 17.0 * groupdyn::psi(2.0, p);
  for (int n = 3; n <= 500; ++n) {
    const double v = 17.0 * groupdyn::psi(n, p);
    if (v > best) {
      best = v;
      best_n = n;
    }
  }
  CHECK(best_n == direct);
}

TEST_CASE("normalization integral equals 1/beta independent of n_t") {
  for (double beta : {0.5, 0.75, 0.875, 0.93, 1.0}) {
    for (double n_t : {8.0, 52.0, 150.0}) {
      CAPTURE(beta, n_t);
      const double integral =
          groupdyn::normalization_integral({beta, n_t}, 1e-8);
      CHECK_THAT(integral, WithinAbs(1.0 / beta, 1e-6));
    }
  }
}

TEST_CASE("discrete normalizer") {
  const GroupScalingParams p{1.0, 8.0};
  CHECK_THAT(groupdyn::discrete_normalizer(p, 2, 2),
             WithinRel(groupdyn::psi(2.0, p), 1e-15));
  // mpmath oracle: sum over [2, 1e4] = 0.971612685983016; the continuum
  // integral is 1.0, so the lattice sum sits within 3% of it.
  const double z = groupdyn::discrete_normalizer(p, 2, 10000);
  CHECK_THAT(z, WithinRel(0.9716126859830160, 1e-12));
  CHECK(std::abs(z - 1.0) < 0.03);
  CHECK_THAT(groupdyn::discrete_normalizer({0.93, 52.0}, 2, 10000),
             WithinRel(1.0735700170798132, 1e-12));
  // monotone non-decreasing in the cut
  double prev = 0.0;
  for (int cut : {2, 4, 8, 16, 64, 256}) {
    const double cur = groupdyn::discrete_normalizer(p, 2, cut);
    CHECK(cur >= prev);
    prev = cur;
  }
  CHECK_THROWS_AS(groupdyn::discrete_normalizer(p, 1, 10),
                  std::invalid_argument);
}

TEST_CASE("discrete normalizer reports underflow") {
  // nu is astronomically large for every n >= 2, so every term is 0
  const GroupScalingParams tiny{1.0, 1e-300};
  CHECK_THROWS_AS(groupdyn::discrete_normalizer(tiny, 2, 100),
                  std::runtime_error);
}

TEST_CASE("density properties hold across random parameters") {
  std::mt19937_64 rng(20240801);
  std::uniform_real_distribution<double> beta_draw(0.05, 1.0);
  std::uniform_real_distribution<double> n_t_draw(2.0, 500.0);
  std::uniform_real_distribution<double> n_draw(1.0, 2000.0);
  for (int trial = 0; trial < 300; ++trial) {
    const GroupScalingParams p{beta_draw(rng), n_t_draw(rng)};
    const double n = n_draw(rng);
    const double nu = groupdyn::scaled_nu(n, p).nu;
    CHECK(nu >= 0.0);
    CHECK_THAT(nu, WithinAbs(2.0 * p.beta * (n - 1.0) / p.n_t, 1e-12));
    const double v = groupdyn::psi(n, p);
    CHECK(v >= 0.0);
    CHECK(std::isfinite(v));
    // the analytic mode beats both integer neighbors
    const double mode = groupdyn::continuous_mode(p);
    CHECK(groupdyn::psi(mode, p) >= groupdyn::psi(mode - 0.5, p));
    CHECK(groupdyn::psi(mode, p) >= groupdyn::psi(mode + 0.5, p));
  }
}

TEST_CASE("reducing beta stretches the mode upward at fixed n_t") {
  // n* = 1 + n_t/(4 beta): lower efficiency pushes the peak right. The
  // equivalent statement at fixed mode is that the consistent contention
  // scale 4 beta (m - 1) shrinks with beta.
  const double n_t = 90.0;
  double prev = groupdyn::continuous_mode({1.0, n_t});
  for (double beta : {0.9, 0.8, 0.6, 0.4, 0.2}) {
    const double cur = groupdyn::continuous_mode({beta, n_t});
    CHECK(cur > prev);
    prev = cur;
  }
  // at fixed mode, the implied scale falls with beta
  const double mode = 15.0;
  CHECK(4.0 * 0.875 * (mode - 1.0) < 4.0 * 1.0 * (mode - 1.0));
}

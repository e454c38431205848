#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mrplab/mvu.h"
#include "mrplab/special_functions.h"
#include "oracles.h"

namespace mrplab {
namespace {

double direct_dilog(double x, long terms) {
  double acc = 0.0, xi = 1.0;
  for (long i = 1; i <= terms; ++i) {
    xi *= x;
    acc += xi / (double(i) * double(i));
    if (xi == 0.0) break;
  }
  return acc;
}

TEST(Dilogarithm, KnownValues) {
  EXPECT_EQ(dilogarithm(0.0), 0.0);
  EXPECT_NEAR(dilogarithm(1.0), std::numbers::pi * std::numbers::pi / 6, 1e-14);
  const double ln2 = std::numbers::ln2;
  EXPECT_NEAR(dilogarithm(0.5), std::numbers::pi * std::numbers::pi / 12 - ln2 * ln2 / 2, 1e-14);
}

TEST(Dilogarithm, MatchesDirectSum) {
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99})
    EXPECT_NEAR(dilogarithm(x), direct_dilog(x, 10'000'000), 1e-10) << x;
  // The direct sum converges like 1/N at x = 1.
  EXPECT_NEAR(dilogarithm(1.0), direct_dilog(1.0, 10'000'000), 1.1e-7);
}

TEST(Dilogarithm, RejectsOutOfRange) {
  EXPECT_THROW(dilogarithm(-0.1), std::domain_error);
  EXPECT_THROW(dilogarithm(1.1), std::domain_error);
}

TEST(Tails, MatchDirectSums) {
  for (double x : {0.01, 0.5, 0.9, 0.99})
    for (unsigned m : {1u, 2u, 5u, 20u}) {
      double lt = 0.0, dt = 0.0, xi = 1.0;
      for (long i = m; i < 20'000'000 && xi > 1e-300; ++i) {
        lt += xi / i;
        dt += xi / (double(i) * i);
        xi *= x;
      }
      EXPECT_NEAR(scaled_log_tail(x, m), lt, 1e-10 * std::max(1.0, lt)) << x << " " << m;
      EXPECT_NEAR(scaled_dilog_tail(x, m), dt, 1e-10) << x << " " << m;
    }
}

TEST(TwoStateMse, MlFormulaMatchesSeries) {
  for (double p : {0.1, 0.5, 0.9, 0.99})
    for (unsigned m : {2u, 3u, 10u}) {
      const double g = 1.0 - 1.0 / m;
      EXPECT_NEAR(ml_two_state_mse(p, m), oracle::ml_mse_exit_series(p, g), 1e-10) << p << " " << m;
    }
}

TEST(TwoStateMse, SpotValues) {
  EXPECT_NEAR(mvu_two_state_mse(0.5, 0.5), 0.127, 5e-4);
  EXPECT_NEAR(ml_two_state_mse(0.5, 2), 0.072, 5e-4);
  EXPECT_NEAR(mvu_two_state_mse(0.99, 0.5), 0.0129, 5e-5);
  EXPECT_NEAR(ml_two_state_mse(0.99, 2), 0.0219, 5e-5);
  EXPECT_THROW(ml_two_state_mse(1.0, 2), std::domain_error);
  EXPECT_THROW(ml_two_state_mse(0.5, 1), std::domain_error);
}

}  // namespace
}  // namespace mrplab

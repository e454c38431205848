#pragma once

namespace mrplab {

// Li2(x) = sum_{i>=1} x^i / i^2 for x in [0, 1].
double dilogarithm(double x);

// Tails sum_{i>=m} x^i / i and sum_{i>=m} x^i / i^2 scaled by x^{-m}.
double scaled_log_tail(double x, unsigned m);
double scaled_dilog_tail(double x, unsigned m);

}  // namespace mrplab

#include "mrplab/special_functions.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mrplab {
namespace {

double li2_series(double x) {
  double term = x, sum = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double t = term / (double(k) * k);
    sum += t;
    if (t < 1e-18 * sum) break;
    term *= x;
  }
  return sum;
}

}  // namespace

double dilogarithm(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("dilogarithm: argument outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return std::numbers::pi * std::numbers::pi / 6.0;
  if (x <= 0.5) return li2_series(x);
  return std::numbers::pi * std::numbers::pi / 6.0 - std::log(x) * std::log1p(-x) -
         li2_series(1.0 - x);
}

double scaled_log_tail(double x, unsigned m) {
  if (m == 0) throw std::domain_error("scaled_log_tail: m must be positive");
  if (x <= 0.9) {
    double sum = 0.0, w = 1.0;
    for (unsigned k = 0; k < 100000 && w > 1e-19; ++k, w *= x) sum += w / double(m + k);
    return sum;
  }
  double head = 0.0, w = x;
  for (unsigned i = 1; i < m; ++i, w *= x) head += w / double(i);
  return (-std::log1p(-x) - head) / std::pow(x, double(m));
}

double scaled_dilog_tail(double x, unsigned m) {
  if (m == 0) throw std::domain_error("scaled_dilog_tail: m must be positive");
  if (x <= 0.9) {
    double sum = 0.0, w = 1.0;
    for (unsigned k = 0; k < 100000 && w > 1e-19; ++k, w *= x)
      sum += w / (double(m + k) * double(m + k));
    return sum;
  }
  double head = 0.0, w = x;
  for (unsigned i = 1; i < m; ++i, w *= x) head += w / (double(i) * i);
  return (dilogarithm(x) - head) / std::pow(x, double(m));
}

}  // namespace mrplab

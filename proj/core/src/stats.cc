#include "mrplab/stats.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mrplab {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 16) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MseDecomposition mse_decompose(std::span<const double> estimates, double truth) {
  if (estimates.empty()) throw std::invalid_argument("mse_decompose: empty sample");
  const double n = static_cast<double>(estimates.size());
  std::vector<double> sq(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = estimates[i] - truth;
    sq[i] = d * d;
  }
  MseDecomposition out;
  out.mse = pairwise_sum(sq) / n;
  out.bias = pairwise_sum(estimates) / n - truth;
  out.variance = out.mse - out.bias * out.bias;
  return out;
}

MeanStat mean_with_error(std::span<const double> xs) {
  MeanStat m;
  m.count = xs.size();
  if (xs.empty()) return m;
  m.mean = pairwise_sum(xs) / double(xs.size());
  if (xs.size() < 2) return m;
  std::vector<double> dev(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = (xs[i] - m.mean) * (xs[i] - m.mean);
  const double var = pairwise_sum(dev) / double(xs.size() - 1);
  m.std_error = std::sqrt(var / double(xs.size()));
  return m;
}

}  // namespace mrplab

#pragma once

#include <cstddef>
#include <span>

namespace mrplab {

struct MseDecomposition {
  double mse = 0.0;
  double bias = 0.0;
  double variance = 0.0;
};

MseDecomposition mse_decompose(std::span<const double> estimates, double truth);

struct MeanStat {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

// Sample mean and its standard error (unbiased sample variance).
MeanStat mean_with_error(std::span<const double> xs);

// Pairwise summation in fixed index order.
double pairwise_sum(std::span<const double> xs);

}  // namespace mrplab

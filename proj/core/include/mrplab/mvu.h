#pragma once

#include <cstdint>
#include <vector>

#include "mrplab/mrp.h"
#include "mrplab/sampled_estimators.h"
#include "mrplab/sufficient_stats.h"

namespace mrplab {

struct EnumerationLimits {
  std::uint64_t max_vectors = 10'000'000;
  double max_seconds = 60.0;
  unsigned threads = 1;
  bool keep_family = true;
};

struct PathMultiset {
  std::vector<PathSample> paths;  // canonical non-decreasing order
  std::uint64_t multiplicity = 0;  // n! / prod(repeat counts!)
};

struct ConsistentFamily {
  std::vector<PathMultiset> multisets;
  std::uint64_t total_ordered_count = 0;
  std::uint64_t multiset_count = 0;
};

ConsistentFamily enumerate_consistent(const SuffStat& stat, const MrpSpec& topology,
                                      const EnumerationLimits& limits = {});

PerStateEstimate mvu_estimate(const SuffStat& stat, const MrpSpec& topology, double discount,
                              const EnumerationLimits& limits = {});

// Two-state cycle with reward 1 on the cycle and 0 on the exit edge.
double mvu_two_state_closed(std::uint64_t total_cycles, std::uint64_t num_paths, double discount);
// Single-path MSE of the unbiased estimator with reward 1 on the exit edge.
double mvu_two_state_mse(double p, double discount);
// Single-path MSE of the ML estimator with reward 1 on the exit edge, discount = 1 - 1/m.
double ml_two_state_mse(double p, unsigned m);

}  // namespace mrplab

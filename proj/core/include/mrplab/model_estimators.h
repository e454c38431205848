#pragma once

#include <span>
#include <vector>

#include "mrplab/rng.h"
#include "mrplab/sampled_estimators.h"
#include "mrplab/sufficient_stats.h"

namespace mrplab {

std::vector<double> ml_value(const MlParams& params, double discount);
std::vector<double> lstd_value(const MlParams& params, double discount);

std::vector<double> bellman_apply(std::span<const double> v, const MlParams& params,
                                  double discount);
// ((n-1)/n) v + (1/n) T v
std::vector<double> td0_operator_apply(std::span<const double> v, const MlParams& params,
                                       double discount, std::size_t n);
std::vector<double> iml_update(std::vector<double> v, const MlParams& params, double discount,
                               StateIndex s);

// p_k = (1 - c + 2c(k-1)/(n-1)) / n
std::vector<double> contraction_prior(std::size_t n, double c);
std::vector<double> statewise_random_apply(std::vector<double> v, const MlParams& params,
                                           double discount, std::span<const double> prior,
                                           Rng& rng);
// Same as above with a precomputed cumulative prior.
void statewise_random_apply_cumulative(std::vector<double>& v, const MlParams& params,
                                       double discount, std::span<const double> cumulative,
                                       Rng& rng);

double sup_norm(std::span<const double> v);
double sup_distance(std::span<const double> a, std::span<const double> b);
// Max row sum of |A|.
double operator_norm(const MlParams& params);

// Incremental iML: after each path, the visited states get a Bellman update
// from the last state of the path back to the first.
class IterativeMl {
 public:
  IterativeMl(const MrpSpec& topology, double discount);

  void observe(const PathSample& path);
  const std::vector<double>& values() const { return values_; }
  const SuffStat& stat() const { return stat_; }
  PerStateEstimate estimate() const;

 private:
  void update(StateIndex s);

  const MrpSpec* topology_;
  double discount_;
  SuffStat stat_;
  std::vector<double> values_;
  std::vector<std::vector<StateIndex>> successors_;
};

}  // namespace mrplab

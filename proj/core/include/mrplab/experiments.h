#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mrplab/mrp.h"
#include "mrplab/rng.h"

namespace mrplab {

enum class Estimator { mc_first, mc_every, td, td_standard, iml, ml, lstd, mvu };

std::string estimator_name(Estimator e);
Estimator parse_estimator(const std::string& name);

struct LayeredConfig {
  std::size_t num_layers = 10;
  std::size_t max_states_per_layer = 20;
  std::size_t start_layers = 4;
  double start_prob_target_state = 0.2;
  double high_reward_fraction = 0.02;
  double high_reward_value = 1000.0;
  double base_reward_low = 0.0;
  double base_reward_high = 1.0;
  double discount = 1.0;
  std::uint64_t seed = 1;

  void check() const;
};

struct LayeredMrp {
  MrpSpec spec;
  StateIndex target = 0;
  std::vector<std::size_t> layer_of;  // target is layer 0, terminal is num_layers + 1
  std::vector<StateIndex> subgraph_starts;
};

LayeredMrp gen_layered_acyclic(const LayeredConfig& cfg, Rng& rng);
LayeredMrp gen_layered_acyclic(const LayeredConfig& cfg);

struct ReplicateConfig {
  std::size_t blocks = 30;
  std::size_t per_block = 300;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ExperimentRow {
  std::string experiment;
  std::string estimator;
  std::string sweep;
  std::int64_t block = 0;
  double mse = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double time_s = 0.0;
  double x = 0.0;  // numeric sweep coordinate for plot files
};

struct ExperimentResult {
  std::string id;
  std::vector<ExperimentRow> rows;

  std::string csv() const;
  // file name -> contents; one whitespace-separated table per estimator.
  std::map<std::string, std::string> gnuplot() const;
};

ExperimentResult exp_mse_vs_paths(const LayeredConfig& cfg, std::span<const Estimator> estimators,
                                  std::span<const std::size_t> n_grid,
                                  const ReplicateConfig& reps);

// Grid point x: 10 starts in the target plus 0 (x = 0) or 10 * 2^(x-1)
// starts spread over the subgraph.
std::size_t subgraph_starts_at(unsigned x, std::size_t base = 10);
ExperimentResult exp_mse_vs_startprob(const LayeredConfig& cfg,
                                      std::span<const Estimator> estimators,
                                      std::span<const unsigned> x_grid,
                                      const ReplicateConfig& reps,
                                      std::size_t target_starts = 10);

enum class ClockKind { wall, work };

struct TimeConfig {
  std::vector<std::size_t> n_grid{10, 20, 50, 100, 200, 500, 1000};
  std::vector<std::size_t> ml_n_grid{10, 20, 30, 40, 50};
  double per_path_cost = 1.0;
  ClockKind clock = ClockKind::wall;
  std::size_t repetitions = 5;
};

ExperimentResult exp_mse_vs_time(const LayeredConfig& cfg, std::span<const Estimator> estimators,
                                 const TimeConfig& tcfg, const ReplicateConfig& reps);

enum class RewardConvention { exit, cycle };

struct CyclicConfig {
  std::vector<double> p_grid{0.5};
  std::vector<double> gamma_grid{0.5};
  std::size_t n = 1;
  RewardConvention reward = RewardConvention::exit;
  double bias_p = 0.9;
  double bias_gamma = 0.9;
  std::vector<std::size_t> bias_n_grid{1, 2, 4, 8, 16};
};

ExperimentResult exp_cyclic_mvu_ml(const CyclicConfig& ccfg, const ReplicateConfig& reps);

// Single-path MSE of ML and the unbiased estimator on the two-state cycle,
// summed over the geometric number of cycles.
struct TwoStateAnalytic {
  double mvu_mse = 0.0;
  double ml_mse = 0.0;
  double ml_bias = 0.0;
};
TwoStateAnalytic two_state_single_path(double p, double discount, RewardConvention reward);

struct ContractionConfig {
  std::size_t size = 100;
  std::vector<double> gamma_grid{0.3, 0.5, 0.7, 0.9};
  std::vector<double> c_grid{0.0, 0.5, 1.0};
  std::size_t iterations = 100;
  std::size_t matrices = 20;
};

// Distances to the fixed point normalized by the initial distance are stored
// in the bias column; mse holds the square and variance is zero.
ExperimentResult exp_contraction(const ContractionConfig& ccfg, const ReplicateConfig& reps);

// Random row-stochastic model with Dirichlet(1) rows and uniform [0,1] rewards.
struct RandomModel {
  std::size_t n = 0;
  std::vector<double> p;
  std::vector<double> r;
};
RandomModel random_model(std::size_t n, Rng& rng);

std::vector<std::string> experiment_names();

}  // namespace mrplab

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mrplab/mrp.h"

namespace mrplab {

struct PerStateEstimate {
  std::vector<double> values;
  std::vector<bool> defined;
};

PerStateEstimate mc_first_visit(std::span<const PathSample> paths, double discount,
                                std::size_t num_states);
PerStateEstimate mc_every_visit(std::span<const PathSample> paths, double discount,
                                std::size_t num_states);

enum class TraceKind { accumulating, replacing };
enum class UpdateMode { offline, online };

struct LearningRate {
  enum class Kind { harmonic, constant };
  Kind kind = Kind::harmonic;
  double alpha = 1.0;

  static LearningRate harmonic() { return {}; }
  static LearningRate constant(double a) { return {Kind::constant, a}; }
  // Rate for the k-th update (k >= 1).
  double at(std::uint64_t k) const;
};

struct TdConfig {
  double lambda = 0.0;
  TraceKind trace = TraceKind::accumulating;
  LearningRate rate = LearningRate::harmonic();
  bool modified = false;
  double initial_value = 0.0;
  UpdateMode mode = UpdateMode::offline;

  void check() const;
};

struct EstimatorState {
  std::vector<double> values;
  std::vector<std::uint64_t> updates_seen;
  std::vector<double> traces;
  std::vector<bool> initialized;

  EstimatorState() = default;
  EstimatorState(std::size_t n, double initial_value);

  PerStateEstimate estimate() const;
};

// Offline mode sweeps the episode from the terminal end backwards and applies
// each update immediately; online mode runs the classic forward trace update.
void td_episode(EstimatorState& state, const PathSample& path, const TdConfig& cfg,
                double discount);

EstimatorState td_run(std::span<const PathSample> paths, const TdConfig& cfg, double discount,
                      std::size_t num_states);

// beta_i = alpha_i * prod_{j>i} (1 - alpha_j)
std::vector<double> td0_weights(std::span<const double> alphas);
std::vector<double> td0_weights(std::size_t n, const LearningRate& rate);

}  // namespace mrplab

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrplab/mrp.h"

namespace mrplab {

using Count = std::uint64_t;
using Edge = std::pair<StateIndex, StateIndex>;

struct SuffStat {
  std::size_t num_states = 0;
  Count num_paths = 0;
  std::vector<Count> start_counts;
  std::vector<Count> transition_counts;  // row-major
  std::vector<Count> visit_counts;
  std::vector<double> reward_sums;  // row-major
  // Per-support-entry event counts; only edges with a discrete reward model.
  std::map<Edge, std::vector<Count>> reward_events;

  SuffStat() = default;
  explicit SuffStat(std::size_t n);

  Count mu(StateIndex i, StateIndex j) const { return transition_counts[i * num_states + j]; }
  double reward_sum(StateIndex i, StateIndex j) const { return reward_sums[i * num_states + j]; }

  // Throws ValidationError if the path uses an edge absent from the topology.
  void add(const PathSample& path, const MrpSpec& topology);
  void merge(const SuffStat& other);

  // Violated invariants; empty when consistent.
  std::vector<std::string> check(const MrpSpec* topology = nullptr) const;

  bool operator==(const SuffStat&) const = default;
};

SuffStat accumulate(SuffStat stat, const PathSample& path, const MrpSpec& topology);
SuffStat accumulate(std::span<const PathSample> paths, const MrpSpec& topology);
SuffStat merge(const SuffStat& a, const SuffStat& b);

struct MlParams {
  std::size_t num_states = 0;
  std::vector<double> p_bar;   // row-major
  std::vector<double> start_bar;
  std::vector<double> r_bar;   // per-edge mean reward, row-major
  std::vector<double> r_expected;  // sum_j p_bar_ij r_bar_ij
  std::vector<bool> visited;

  double p(StateIndex i, StateIndex j) const { return p_bar[i * num_states + j]; }
  double r(StateIndex i, StateIndex j) const { return r_bar[i * num_states + j]; }

  // Wrap a known model; every row with nonzero mass counts as visited.
  static MlParams from_model(std::size_t n, std::vector<double> p, std::vector<double> r);
};

MlParams ml_params(const SuffStat& stat);

// State s has full information if no successor of s shows up in any path
// without s having been visited earlier in that path.
std::vector<bool> full_information_states(const SuffStat& stat, std::span<const PathSample> paths);

}  // namespace mrplab

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mrplab/rng.h"

namespace mrplab {

using StateIndex = std::size_t;

struct RewardOutcome {
  double value = 0.0;
  double probability = 0.0;
};

class EdgeReward {
 public:
  EdgeReward() = default;
  static EdgeReward deterministic(double value);
  static EdgeReward discrete(std::vector<RewardOutcome> support);

  bool is_deterministic() const { return deterministic_; }
  double mean() const;
  const std::vector<RewardOutcome>& outcomes() const { return outcomes_; }
  // Index of the support entry equal to value, if any.
  std::optional<std::size_t> outcome_index(double value) const;

 private:
  bool deterministic_ = true;
  std::vector<RewardOutcome> outcomes_{{0.0, 1.0}};
};

struct MrpSpec {
  std::size_t num_states = 0;
  std::vector<double> start_probs;
  std::vector<double> transitions;  // row-major num_states x num_states
  std::vector<EdgeReward> rewards;  // row-major, one per edge
  double discount = 1.0;
  std::vector<bool> terminal;

  static MrpSpec empty(std::size_t n, double discount = 1.0);

  double p(StateIndex i, StateIndex j) const { return transitions[i * num_states + j]; }
  const EdgeReward& reward(StateIndex i, StateIndex j) const { return rewards[i * num_states + j]; }
  void set_edge(StateIndex i, StateIndex j, double prob, EdgeReward r = {});
  bool has_edge(StateIndex i, StateIndex j) const { return p(i, j) > 0.0; }
};

// Empty iff the model is well formed.
std::vector<std::string> validate(const MrpSpec& spec);
// Throws ValidationError carrying the joined report.
void require_valid(const MrpSpec& spec);

std::vector<double> exact_value(const MrpSpec& spec);
// Expected one-step reward r_i.
std::vector<double> expected_rewards(const MrpSpec& spec);
bool is_acyclic(const MrpSpec& spec);

struct PathSample {
  std::vector<StateIndex> states;
  std::vector<double> rewards;  // states.size() - 1 entries

  std::size_t length() const { return states.size(); }
  std::size_t transitions() const { return rewards.size(); }
};

// Checks a path against the topology; empty report when it is consistent.
std::vector<std::string> check_path(const MrpSpec& spec, const PathSample& path);

inline constexpr std::size_t kDefaultMaxPathLength = 1'000'000;

class PathSampler {
 public:
  explicit PathSampler(const MrpSpec& spec, std::size_t max_length = kDefaultMaxPathLength);

  PathSample sample(Rng& rng) const;
  PathSample sample_from(StateIndex start, Rng& rng) const;
  void sample_into(StateIndex start, Rng& rng, PathSample& out) const;
  StateIndex sample_start(Rng& rng) const;

  const MrpSpec& spec() const { return *spec_; }

 private:
  struct Row {
    std::vector<StateIndex> targets;
    std::vector<double> cumulative;
  };
  double draw_reward(StateIndex i, StateIndex j, Rng& rng) const;

  const MrpSpec* spec_;
  std::size_t max_length_;
  std::vector<Row> rows_;
  std::vector<double> start_cumulative_;
  std::vector<StateIndex> start_states_;
};

PathSample sample_path(const MrpSpec& spec, Rng& rng,
                       std::size_t max_length = kDefaultMaxPathLength);

}  // namespace mrplab

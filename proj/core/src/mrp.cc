#include "mrplab/mrp.h"

#include <cmath>
#include <sstream>

#include "linalg.h"
#include "mrplab/errors.h"

namespace mrplab {
namespace {

constexpr double kProbTol = 1e-12;

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "; ";
    out += l;
  }
  return out;
}

std::vector<bool> reachable_from_starts(const MrpSpec& s) {
  const std::size_t n = s.num_states;
  std::vector<bool> seen(n, false);
  std::vector<StateIndex> stack;
  for (StateIndex i = 0; i < n; ++i)
    if (s.start_probs[i] > 0.0) seen[i] = true, stack.push_back(i);
  while (!stack.empty()) {
    const StateIndex i = stack.back();
    stack.pop_back();
    for (StateIndex j = 0; j < n; ++j)
      if (s.p(i, j) > 0.0 && !seen[j]) seen[j] = true, stack.push_back(j);
  }
  return seen;
}

}  // namespace

EdgeReward EdgeReward::deterministic(double value) {
  EdgeReward r;
  r.outcomes_ = {{value, 1.0}};
  return r;
}

EdgeReward EdgeReward::discrete(std::vector<RewardOutcome> support) {
  EdgeReward r;
  r.deterministic_ = false;
  r.outcomes_ = std::move(support);
  return r;
}

double EdgeReward::mean() const {
  double m = 0.0;
  for (const auto& o : outcomes_) m += o.value * o.probability;
  return m;
}

std::optional<std::size_t> EdgeReward::outcome_index(double value) const {
  for (std::size_t k = 0; k < outcomes_.size(); ++k)
    if (outcomes_[k].value == value) return k;
  return std::nullopt;
}

MrpSpec MrpSpec::empty(std::size_t n, double discount) {
  MrpSpec s;
  s.num_states = n;
  s.start_probs.assign(n, 0.0);
  s.transitions.assign(n * n, 0.0);
  s.rewards.assign(n * n, EdgeReward::deterministic(0.0));
  s.discount = discount;
  s.terminal.assign(n, false);
  return s;
}

void MrpSpec::set_edge(StateIndex i, StateIndex j, double prob, EdgeReward r) {
  transitions[i * num_states + j] = prob;
  rewards[i * num_states + j] = std::move(r);
}

std::vector<std::string> validate(const MrpSpec& s) {
  std::vector<std::string> report;
  const std::size_t n = s.num_states;
  auto fail = [&](std::string msg) { report.push_back(std::move(msg)); };
  if (n == 0) fail("num_states must be positive");
  if (s.start_probs.size() != n) fail("start_probs has wrong length");
  if (s.transitions.size() != n * n) fail("transitions has wrong size");
  if (s.rewards.size() != n * n) fail("rewards has wrong size");
  if (s.terminal.size() != n) fail("terminal mask has wrong length");
  if (!report.empty()) return report;

  if (!(s.discount > 0.0 && s.discount <= 1.0))
    fail("discount must lie in (0, 1], got " + std::to_string(s.discount));

  double start_total = 0.0;
  for (StateIndex i = 0; i < n; ++i) {
    const double x = s.start_probs[i];
    if (!(x >= 0.0) || !std::isfinite(x)) fail("start probability of state " + std::to_string(i) + " is negative or not finite");
    start_total += x;
  }
  if (std::abs(start_total - 1.0) > kProbTol)
    fail("start_probs sum to " + std::to_string(start_total) + ", not 1");

  bool any_terminal = false;
  for (StateIndex i = 0; i < n; ++i) {
    double row = 0.0;
    bool bad_entry = false;
    for (StateIndex j = 0; j < n; ++j) {
      const double x = s.p(i, j);
      if (!(x >= 0.0) || !std::isfinite(x)) bad_entry = true;
      row += x;
    }
    if (bad_entry) fail("row " + std::to_string(i) + " has a negative or non-finite probability");
    if (s.terminal[i]) {
      any_terminal = true;
      if (row != 0.0) fail("row " + std::to_string(i) + " belongs to a terminal state but is not all zero");
    } else if (std::abs(row - 1.0) > kProbTol) {
      std::ostringstream os;
      os << "row " << i << " sums to " << row << ", not 1";
      fail(os.str());
    }
    for (StateIndex j = 0; j < n; ++j) {
      const auto& r = s.reward(i, j);
      if (r.is_deterministic()) {
        if (!std::isfinite(r.mean()))
          fail("reward on edge " + std::to_string(i) + "->" + std::to_string(j) + " is not finite");
        continue;
      }
      double tot = 0.0;
      bool bad = r.outcomes().empty();
      for (std::size_t k = 0; k < r.outcomes().size(); ++k) {
        const auto& o = r.outcomes()[k];
        if (!(o.probability >= 0.0) || !std::isfinite(o.value)) bad = true;
        for (std::size_t l = 0; l < k; ++l)
          if (r.outcomes()[l].value == o.value) bad = true;
        tot += o.probability;
      }
      const std::string edge = std::to_string(i) + "->" + std::to_string(j);
      if (bad) fail("reward support on edge " + edge + " is empty, repeats a value or has a negative entry");
      if (std::abs(tot - 1.0) > kProbTol) fail("reward support on edge " + edge + " does not sum to 1");
    }
  }
  if (!any_terminal) fail("no terminal state");
  if (!report.empty()) return report;

  if (s.discount == 1.0) {
    // Every non-terminal state must reach a terminal state through positive edges.
    std::vector<bool> absorbs(n, false);
    for (StateIndex i = 0; i < n; ++i) absorbs[i] = s.terminal[i];
    for (bool changed = true; changed;) {
      changed = false;
      for (StateIndex i = 0; i < n; ++i) {
        if (absorbs[i]) continue;
        for (StateIndex j = 0; j < n; ++j)
          if (s.p(i, j) > 0.0 && absorbs[j]) {
            absorbs[i] = changed = true;
            break;
          }
      }
    }
    auto reach = reachable_from_starts(s);
    for (StateIndex i = 0; i < n; ++i)
      if (!absorbs[i])
        fail("absorption: state " + std::to_string(i) +
             (reach[i] ? " is reachable but" : "") + " never reaches a terminal state with discount 1");
  }
  return report;
}

void require_valid(const MrpSpec& spec) {
  auto report = validate(spec);
  if (!report.empty()) throw ValidationError("invalid MRP: " + join(report));
}

std::vector<double> expected_rewards(const MrpSpec& s) {
  const std::size_t n = s.num_states;
  std::vector<double> r(n, 0.0);
  for (StateIndex i = 0; i < n; ++i)
    for (StateIndex j = 0; j < n; ++j)
      if (s.p(i, j) > 0.0) r[i] += s.p(i, j) * s.reward(i, j).mean();
  return r;
}

std::vector<double> exact_value(const MrpSpec& s) {
  require_valid(s);
  const std::size_t n = s.num_states;
  auto m = detail::identity_minus(n, s.transitions, s.discount);
  auto v = detail::solve_exact(n, m, expected_rewards(s));
  for (StateIndex i = 0; i < n; ++i)
    if (s.terminal[i]) v[i] = 0.0;
  return v;
}

bool is_acyclic(const MrpSpec& s) {
  const std::size_t n = s.num_states;
  auto reach = reachable_from_starts(s);
  // Kahn's algorithm on the reachable subgraph.
  std::vector<std::size_t> indeg(n, 0);
  for (StateIndex i = 0; i < n; ++i)
    if (reach[i])
      for (StateIndex j = 0; j < n; ++j)
        if (s.p(i, j) > 0.0) ++indeg[j];
  std::vector<StateIndex> queue;
  std::size_t total = 0;
  for (StateIndex i = 0; i < n; ++i)
    if (reach[i]) {
      ++total;
      if (indeg[i] == 0) queue.push_back(i);
    }
  std::size_t removed = 0;
  while (!queue.empty()) {
    const StateIndex i = queue.back();
    queue.pop_back();
    ++removed;
    for (StateIndex j = 0; j < n; ++j)
      if (s.p(i, j) > 0.0 && --indeg[j] == 0) queue.push_back(j);
  }
  return removed == total;
}

std::vector<std::string> check_path(const MrpSpec& s, const PathSample& path) {
  std::vector<std::string> report;
  if (path.states.empty()) {
    report.push_back("path is empty");
    return report;
  }
  if (path.rewards.size() + 1 != path.states.size())
    report.push_back("path has " + std::to_string(path.rewards.size()) + " rewards for " +
                     std::to_string(path.states.size()) + " states");
  for (std::size_t t = 0; t < path.states.size(); ++t) {
    const StateIndex x = path.states[t];
    if (x >= s.num_states) {
      report.push_back("state index " + std::to_string(x) + " out of range");
      return report;
    }
    const bool last = t + 1 == path.states.size();
    if (s.terminal[x] != last)
      report.push_back(last ? "path does not end in a terminal state"
                            : "path visits terminal state " + std::to_string(x) + " before its end");
    if (!last) {
      const StateIndex y = path.states[t + 1];
      if (y >= s.num_states) continue;
      if (!s.has_edge(x, y))
        report.push_back("edge " + std::to_string(x) + "->" + std::to_string(y) + " has probability 0");
      else if (t < path.rewards.size() && !s.reward(x, y).outcome_index(path.rewards[t]) &&
               !s.reward(x, y).is_deterministic())
        report.push_back("reward on edge " + std::to_string(x) + "->" + std::to_string(y) +
                         " is outside its support");
    }
  }
  return report;
}

PathSampler::PathSampler(const MrpSpec& spec, std::size_t max_length)
    : spec_(&spec), max_length_(max_length), rows_(spec.num_states) {
  const std::size_t n = spec.num_states;
  for (StateIndex i = 0; i < n; ++i) {
    double acc = 0.0;
    for (StateIndex j = 0; j < n; ++j)
      if (spec.p(i, j) > 0.0) {
        acc += spec.p(i, j);
        rows_[i].targets.push_back(j);
        rows_[i].cumulative.push_back(acc);
      }
  }
  double acc = 0.0;
  for (StateIndex i = 0; i < n; ++i)
    if (spec.start_probs[i] > 0.0) {
      acc += spec.start_probs[i];
      start_states_.push_back(i);
      start_cumulative_.push_back(acc);
    }
  if (start_states_.empty()) throw ValidationError("no state has positive start probability");
}

StateIndex PathSampler::sample_start(Rng& rng) const {
  return start_states_[rng.pick(start_cumulative_)];
}

double PathSampler::draw_reward(StateIndex i, StateIndex j, Rng& rng) const {
  const auto& r = spec_->reward(i, j);
  const auto& out = r.outcomes();
  if (r.is_deterministic() || out.size() == 1) return out.front().value;
  double u = rng.uniform(), acc = 0.0;
  for (const auto& o : out) {
    acc += o.probability;
    if (u < acc) return o.value;
  }
  return out.back().value;
}

void PathSampler::sample_into(StateIndex start, Rng& rng, PathSample& out) const {
  out.states.clear();
  out.rewards.clear();
  StateIndex x = start;
  out.states.push_back(x);
  while (!spec_->terminal[x]) {
    if (out.states.size() >= max_length_)
      throw ResourceLimitError("max-path-length", "path exceeded the max-path-length guard of " +
                                                      std::to_string(max_length_) + " states");
    const auto& row = rows_[x];
    if (row.targets.empty())
      throw ValidationError("state " + std::to_string(x) + " is non-terminal with no successors");
    const StateIndex y = row.targets[rng.pick(row.cumulative)];
    out.rewards.push_back(draw_reward(x, y, rng));
    out.states.push_back(y);
    x = y;
  }
}

PathSample PathSampler::sample_from(StateIndex start, Rng& rng) const {
  PathSample p;
  sample_into(start, rng, p);
  return p;
}

PathSample PathSampler::sample(Rng& rng) const { return sample_from(sample_start(rng), rng); }

PathSample sample_path(const MrpSpec& spec, Rng& rng, std::size_t max_length) {
  return PathSampler(spec, max_length).sample(rng);
}

}  // namespace mrplab

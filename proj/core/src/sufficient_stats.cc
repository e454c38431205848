#include "mrplab/sufficient_stats.h"

#include "mrplab/errors.h"

namespace mrplab {

SuffStat::SuffStat(std::size_t n)
    : num_states(n),
      start_counts(n, 0),
      transition_counts(n * n, 0),
      visit_counts(n, 0),
      reward_sums(n * n, 0.0) {}

void SuffStat::add(const PathSample& path, const MrpSpec& topology) {
  if (topology.num_states != num_states)
    throw ValidationError("path topology has " + std::to_string(topology.num_states) +
                          " states, statistic has " + std::to_string(num_states));
  if (path.states.empty() || path.rewards.size() + 1 != path.states.size())
    throw ValidationError("malformed path");
  for (StateIndex x : path.states)
    if (x >= num_states) throw ValidationError("state index " + std::to_string(x) + " out of range");
  for (std::size_t t = 0; t + 1 < path.states.size(); ++t) {
    const StateIndex i = path.states[t], j = path.states[t + 1];
    if (!topology.has_edge(i, j))
      throw ValidationError("path uses edge " + std::to_string(i) + "->" + std::to_string(j) +
                            " absent from the topology");
    const auto& model = topology.reward(i, j);
    if (!model.is_deterministic() && !model.outcome_index(path.rewards[t]))
      throw ValidationError("reward on edge " + std::to_string(i) + "->" + std::to_string(j) +
                            " is outside its support");
  }

  ++num_paths;
  ++start_counts[path.states.front()];
  for (StateIndex x : path.states) ++visit_counts[x];
  for (std::size_t t = 0; t + 1 < path.states.size(); ++t) {
    const StateIndex i = path.states[t], j = path.states[t + 1];
    ++transition_counts[i * num_states + j];
    reward_sums[i * num_states + j] += path.rewards[t];
    const auto& model = topology.reward(i, j);
    if (!model.is_deterministic()) {
      auto& ev = reward_events[{i, j}];
      ev.resize(model.outcomes().size(), 0);
      ++ev[*model.outcome_index(path.rewards[t])];
    }
  }
}

void SuffStat::merge(const SuffStat& other) {
  if (other.num_states != num_states) throw ValidationError("merging statistics of different sizes");
  num_paths += other.num_paths;
  for (std::size_t i = 0; i < num_states; ++i) {
    start_counts[i] += other.start_counts[i];
    visit_counts[i] += other.visit_counts[i];
  }
  for (std::size_t k = 0; k < num_states * num_states; ++k) {
    transition_counts[k] += other.transition_counts[k];
    reward_sums[k] += other.reward_sums[k];
  }
  for (const auto& [edge, counts] : other.reward_events) {
    auto& mine = reward_events[edge];
    if (mine.size() < counts.size()) mine.resize(counts.size(), 0);
    for (std::size_t k = 0; k < counts.size(); ++k) mine[k] += counts[k];
  }
}

std::vector<std::string> SuffStat::check(const MrpSpec* topology) const {
  std::vector<std::string> report;
  const std::size_t n = num_states;
  if (start_counts.size() != n || visit_counts.size() != n || transition_counts.size() != n * n ||
      reward_sums.size() != n * n) {
    report.push_back("statistic arrays have inconsistent sizes");
    return report;
  }
  Count starts = 0;
  for (Count c : start_counts) starts += c;
  if (starts != num_paths)
    report.push_back("start counts sum to " + std::to_string(starts) + " but num_paths is " +
                     std::to_string(num_paths));
  for (StateIndex i = 0; i < n; ++i) {
    Count in = start_counts[i], out = 0;
    for (StateIndex j = 0; j < n; ++j) {
      in += mu(j, i);
      out += mu(i, j);
    }
    if (in != visit_counts[i])
      report.push_back("state " + std::to_string(i) + ": visits " + std::to_string(visit_counts[i]) +
                       " differ from starts plus inflow " + std::to_string(in));
    if (!topology && out != 0 && out != visit_counts[i])
      report.push_back("state " + std::to_string(i) + ": outflow " + std::to_string(out) +
                       " differs from visits " + std::to_string(visit_counts[i]));
    if (topology) {
      if (topology->terminal[i] && out != 0)
        report.push_back("terminal state " + std::to_string(i) + " has outgoing transitions");
      if (!topology->terminal[i] && out != visit_counts[i])
        report.push_back("state " + std::to_string(i) + ": outflow " + std::to_string(out) +
                         " differs from visits " + std::to_string(visit_counts[i]));
      for (StateIndex j = 0; j < n; ++j)
        if (mu(i, j) > 0 && !topology->has_edge(i, j))
          report.push_back("edge " + std::to_string(i) + "->" + std::to_string(j) +
                           " is counted but absent from the topology");
    }
  }
  for (const auto& [edge, counts] : reward_events) {
    Count tot = 0;
    for (Count c : counts) tot += c;
    if (edge.first >= n || edge.second >= n) {
      report.push_back("reward events reference a state out of range");
      continue;
    }
    if (tot != mu(edge.first, edge.second))
      report.push_back("reward events on edge " + std::to_string(edge.first) + "->" +
                       std::to_string(edge.second) + " do not sum to its transition count");
  }
  return report;
}

SuffStat accumulate(SuffStat stat, const PathSample& path, const MrpSpec& topology) {
  stat.add(path, topology);
  return stat;
}

SuffStat accumulate(std::span<const PathSample> paths, const MrpSpec& topology) {
  SuffStat stat(topology.num_states);
  for (const auto& p : paths) stat.add(p, topology);
  return stat;
}

SuffStat merge(const SuffStat& a, const SuffStat& b) {
  SuffStat out = a;
  out.merge(b);
  return out;
}

MlParams MlParams::from_model(std::size_t n, std::vector<double> p, std::vector<double> r) {
  MlParams m;
  m.num_states = n;
  m.p_bar = std::move(p);
  m.r_bar = std::move(r);
  m.start_bar.assign(n, 0.0);
  m.r_expected.assign(n, 0.0);
  m.visited.assign(n, false);
  for (StateIndex i = 0; i < n; ++i)
    for (StateIndex j = 0; j < n; ++j) {
      if (m.p(i, j) != 0.0) m.visited[i] = true;
      m.r_expected[i] += m.p(i, j) * m.r(i, j);
    }
  return m;
}

MlParams ml_params(const SuffStat& stat) {
  if (stat.num_paths == 0) throw ValidationError("no paths observed");
  const std::size_t n = stat.num_states;
  MlParams m;
  m.num_states = n;
  m.p_bar.assign(n * n, 0.0);
  m.r_bar.assign(n * n, 0.0);
  m.start_bar.assign(n, 0.0);
  m.r_expected.assign(n, 0.0);
  m.visited.assign(n, false);
  for (StateIndex i = 0; i < n; ++i) {
    const Count k = stat.visit_counts[i];
    m.visited[i] = k > 0;
    Count inflow = 0;
    for (StateIndex j = 0; j < n; ++j) inflow += stat.mu(j, i);
    m.start_bar[i] = double(k - inflow) / double(stat.num_paths);
    if (k == 0) continue;
    for (StateIndex j = 0; j < n; ++j) {
      const Count c = stat.mu(i, j);
      if (c == 0) continue;
      m.p_bar[i * n + j] = double(c) / double(k);
      m.r_bar[i * n + j] = stat.reward_sum(i, j) / double(c);
      m.r_expected[i] += double(c) / double(k) * m.r_bar[i * n + j];
    }
  }
  return m;
}

std::vector<bool> full_information_states(const SuffStat& stat, std::span<const PathSample> paths) {
  const std::size_t n = stat.num_states;
  std::vector<bool> full(n, false);
  for (StateIndex s = 0; s < n; ++s) {
    if (stat.visit_counts[s] == 0) continue;
    std::vector<bool> succ(n, false);
    for (StateIndex j = 0; j < n; ++j) succ[j] = stat.mu(s, j) > 0;
    bool ok = true;
    for (const auto& path : paths) {
      bool seen_s = false;
      for (StateIndex x : path.states) {
        if (x == s) seen_s = true;
        if (succ[x] && !seen_s) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    full[s] = ok;
  }
  return full;
}

}  // namespace mrplab

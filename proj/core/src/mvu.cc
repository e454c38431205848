#include "mrplab/mvu.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <string>

#include "mrplab/errors.h"
#include "mrplab/parallel.h"
#include "mrplab/special_functions.h"

namespace mrplab {
namespace {

using Clock = std::chrono::steady_clock;

struct Arc {
  StateIndex to;
  double reward;
  Count count;
};

struct Problem {
  std::size_t n = 0;
  Count paths = 0;
  double discount = 1.0;
  std::vector<bool> terminal;
  std::vector<Count> starts;
  std::vector<std::vector<Arc>> arcs;  // per source, sorted by (target, reward label)
  Count total_arcs = 0;
  EnumerationLimits limits;
  Clock::time_point deadline;
};

struct Token {
  StateIndex start = 0;
  std::vector<std::uint32_t> arcs;
  bool operator==(const Token&) const = default;
};

Problem build_problem(const SuffStat& stat, const MrpSpec& topo, double discount,
                      const EnumerationLimits& limits) {
  if (topo.num_states != stat.num_states)
    throw ValidationError("statistic and topology disagree on the number of states");
  auto report = stat.check(&topo);
  if (!report.empty()) {
    std::string msg = "inconsistent statistic:";
    for (const auto& r : report) msg += " " + r + ";";
    throw ValidationError(msg);
  }
  if (stat.num_paths == 0) throw ValidationError("no paths observed");
  Problem pb;
  pb.n = stat.num_states;
  pb.paths = stat.num_paths;
  pb.discount = discount;
  pb.terminal = topo.terminal;
  pb.starts = stat.start_counts;
  pb.limits = limits;
  pb.arcs.resize(pb.n);
  for (StateIndex i = 0; i < pb.n; ++i)
    for (StateIndex j = 0; j < pb.n; ++j) {
      const Count mu = stat.mu(i, j);
      if (mu == 0) continue;
      pb.total_arcs += mu;
      const auto& model = topo.reward(i, j);
      if (model.is_deterministic()) {
        pb.arcs[i].push_back({j, model.outcomes().front().value, mu});
        continue;
      }
      auto it = stat.reward_events.find({i, j});
      if (it == stat.reward_events.end())
        throw ValidationError("edge " + std::to_string(i) + "->" + std::to_string(j) +
                              " has a discrete reward but no reward event counts");
      if (it->second.size() > model.outcomes().size())
        throw ValidationError("reward event counts exceed the support on edge " +
                              std::to_string(i) + "->" + std::to_string(j));
      for (std::size_t k = 0; k < it->second.size(); ++k)
        if (it->second[k]) pb.arcs[i].push_back({j, model.outcomes()[k].value, it->second[k]});
    }
  return pb;
}

__extension__ typedef unsigned __int128 Wide;

// C(a + b, b) times acc, or 0 on overflow past the cap.
std::uint64_t times_binomial(std::uint64_t acc, std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  Wide r = acc;
  // C(a+b, b) built incrementally stays integral at each step.
  Wide c = 1;
  for (std::uint64_t k = 1; k <= b; ++k) {
    c = c * (a + k) / k;
    if (c > cap) return 0;
  }
  r *= c;
  if (r > cap) return 0;
  return static_cast<std::uint64_t>(r);
}

struct Partial {
  std::vector<double> weighted;  // sum of multiplicity * first-visit MC per state
  std::uint64_t ordered = 0;
  std::uint64_t multisets = 0;
  std::vector<PathMultiset> family;
};

class Search {
 public:
  Search(const Problem& pb, std::atomic<std::uint64_t>& total)
      : pb_(pb), total_(total), start_left_(pb.starts), arc_left_(pb.n), visited_(pb.n, false) {
    for (StateIndex s = 0; s < pb.n; ++s)
      for (const auto& a : pb.arcs[s]) arc_left_[s].push_back(a.count);
    arcs_left_ = pb.total_arcs;
    out_.weighted.assign(pb.n, 0.0);
    mc_sum_.assign(pb.n, 0.0);
    mc_cnt_.assign(pb.n, 0);
  }

  // Collect every complete first path in canonical order.
  std::vector<Token> first_paths() {
    collect_ = true;
    begin_paths();
    collect_ = false;
    return std::move(firsts_);
  }

  Partial run_from(const Token& first) {
    consume(first, -1);
    done_.push_back(first);
    begin_paths();
    done_.pop_back();
    consume(first, +1);
    return std::move(out_);
  }

 private:
  void consume(const Token& t, int dir) {
    start_left_[t.start] += dir;
    StateIndex x = t.start;
    for (auto a : t.arcs) {
      arc_left_[x][a] += dir;
      arcs_left_ += dir;
      x = pb_.arcs[x][a].to;
    }
  }

  void tick() {
    if ((++nodes_ & 1023) == 0 && Clock::now() > pb_.deadline)
      throw ResourceLimitError("limit-seconds", "enumeration exceeded the wall-time cap of " +
                                                    std::to_string(pb_.limits.max_seconds) + " s");
  }

  bool remaining_reachable() {
    if (arcs_left_ == 0) return true;
    std::vector<bool> seen(pb_.n, false);
    std::vector<StateIndex> stack;
    for (StateIndex s = 0; s < pb_.n; ++s)
      if (start_left_[s]) seen[s] = true, stack.push_back(s);
    while (!stack.empty()) {
      const StateIndex s = stack.back();
      stack.pop_back();
      for (std::size_t a = 0; a < pb_.arcs[s].size(); ++a) {
        if (!arc_left_[s][a]) continue;
        const StateIndex t = pb_.arcs[s][a].to;
        if (!seen[t]) seen[t] = true, stack.push_back(t);
      }
    }
    for (StateIndex s = 0; s < pb_.n; ++s) {
      if (seen[s]) continue;
      for (Count c : arc_left_[s])
        if (c) return false;
    }
    return true;
  }

  void begin_paths() {
    tick();
    if (done_.size() == pb_.paths) {
      if (arcs_left_ == 0) record();
      return;
    }
    if (!remaining_reachable()) return;
    const Token* prev = done_.empty() ? nullptr : &done_.back();
    for (StateIndex s = 0; s < pb_.n; ++s) {
      if (!start_left_[s]) continue;
      if (prev && s < prev->start) continue;
      const bool tight = prev && s == prev->start;
      --start_left_[s];
      cur_.start = s;
      cur_.arcs.clear();
      walk(s, tight);
      ++start_left_[s];
      prev = done_.empty() ? nullptr : &done_.back();
    }
  }

  void walk(StateIndex x, bool tight) {
    tick();
    if (pb_.terminal[x]) {
      if (collect_) {
        firsts_.push_back(cur_);
        return;
      }
      done_.push_back(cur_);
      const Token saved = cur_;
      begin_paths();
      cur_ = saved;
      done_.pop_back();
      return;
    }
    const std::size_t pos = cur_.arcs.size();
    const auto& arcs = pb_.arcs[x];
    for (std::uint32_t a = 0; a < arcs.size(); ++a) {
      if (!arc_left_[x][a]) continue;
      bool next_tight = false;
      if (tight) {
        const std::uint32_t pa = done_.back().arcs[pos];
        if (a < pa) continue;
        next_tight = a == pa;
      }
      --arc_left_[x][a];
      --arcs_left_;
      cur_.arcs.push_back(a);
      walk(arcs[a].to, next_tight);
      cur_.arcs.pop_back();
      ++arc_left_[x][a];
      ++arcs_left_;
    }
  }

  void record() {
    const std::uint64_t cap = pb_.limits.max_vectors;
    std::uint64_t mult = 1;
    std::uint64_t placed = 0;
    for (std::size_t i = 0; i < done_.size();) {
      std::size_t j = i;
      while (j < done_.size() && done_[j] == done_[i]) ++j;
      mult = times_binomial(mult, placed, j - i, cap);
      if (mult == 0) cap_error();
      placed += j - i;
      i = j;
    }
    if (total_.fetch_add(mult) + mult > cap) cap_error();
    out_.ordered += mult;
    ++out_.multisets;

    std::fill(mc_sum_.begin(), mc_sum_.end(), 0.0);
    std::fill(mc_cnt_.begin(), mc_cnt_.end(), 0);
    PathMultiset ms;
    for (const auto& tok : done_) {
      PathSample p = expand(tok);
      ret_.assign(p.states.size(), 0.0);
      for (std::size_t t = p.states.size() - 1; t-- > 0;)
        ret_[t] = p.rewards[t] + pb_.discount * ret_[t + 1];
      for (std::size_t t = 0; t < p.states.size(); ++t) {
        const StateIndex s = p.states[t];
        if (visited_[s]) continue;
        visited_[s] = true;
        mc_sum_[s] += ret_[t];
        ++mc_cnt_[s];
      }
      for (StateIndex s : p.states) visited_[s] = false;
      if (pb_.limits.keep_family) ms.paths.push_back(std::move(p));
    }
    for (StateIndex s = 0; s < pb_.n; ++s)
      if (mc_cnt_[s]) out_.weighted[s] += double(mult) * (mc_sum_[s] / double(mc_cnt_[s]));
    if (pb_.limits.keep_family) {
      ms.multiplicity = mult;
      out_.family.push_back(std::move(ms));
    }
  }

  [[noreturn]] void cap_error() const {
    throw ResourceLimitError("limit-vectors", "enumeration exceeded the cap of " +
                                                  std::to_string(pb_.limits.max_vectors) +
                                                  " consistent path vectors");
  }

  PathSample expand(const Token& tok) const {
    PathSample p;
    StateIndex x = tok.start;
    p.states.push_back(x);
    for (auto a : tok.arcs) {
      const auto& arc = pb_.arcs[x][a];
      p.rewards.push_back(arc.reward);
      p.states.push_back(arc.to);
      x = arc.to;
    }
    return p;
  }

  const Problem& pb_;
  std::atomic<std::uint64_t>& total_;
  std::vector<Count> start_left_;
  std::vector<std::vector<Count>> arc_left_;
  Count arcs_left_ = 0;
  std::vector<Token> done_;
  Token cur_;
  bool collect_ = false;
  std::vector<Token> firsts_;
  std::uint64_t nodes_ = 0;
  Partial out_;
  std::vector<bool> visited_;
  std::vector<double> mc_sum_, ret_;
  std::vector<Count> mc_cnt_;
};

struct Enumeration {
  std::vector<Partial> parts;
  std::uint64_t ordered = 0;
};

Enumeration run(const SuffStat& stat, const MrpSpec& topo, double discount,
                const EnumerationLimits& limits) {
  Problem pb = build_problem(stat, topo, discount, limits);
  const double secs = std::min(std::max(limits.max_seconds, 0.0), 1e8);
  pb.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(secs));
  std::atomic<std::uint64_t> total{0};
  std::vector<Token> firsts = Search(pb, total).first_paths();
  Enumeration e;
  e.parts.resize(firsts.size());
  parallel_for(firsts.size(), limits.threads, [&](std::size_t i) {
    Search s(pb, total);
    e.parts[i] = s.run_from(firsts[i]);
  });
  for (const auto& p : e.parts) e.ordered += p.ordered;
  if (e.ordered == 0) throw InfeasibleError("no consistent decomposition of the observed counts into paths");
  return e;
}

}  // namespace

ConsistentFamily enumerate_consistent(const SuffStat& stat, const MrpSpec& topology,
                                      const EnumerationLimits& limits) {
  auto e = run(stat, topology, topology.discount, limits);
  ConsistentFamily fam;
  fam.total_ordered_count = e.ordered;
  for (auto& p : e.parts) {
    fam.multiset_count += p.multisets;
    for (auto& m : p.family) fam.multisets.push_back(std::move(m));
  }
  return fam;
}

PerStateEstimate mvu_estimate(const SuffStat& stat, const MrpSpec& topology, double discount,
                              const EnumerationLimits& limits) {
  EnumerationLimits lim = limits;
  lim.keep_family = false;
  auto e = run(stat, topology, discount, lim);
  const std::size_t n = stat.num_states;
  PerStateEstimate out;
  out.values.assign(n, 0.0);
  out.defined.assign(n, false);
  std::vector<double> sum(n, 0.0);
  for (const auto& p : e.parts)
    for (StateIndex s = 0; s < n; ++s) sum[s] += p.weighted[s];
  for (StateIndex s = 0; s < n; ++s) {
    if (stat.visit_counts[s] == 0) continue;
    out.defined[s] = true;
    out.values[s] = sum[s] / double(e.ordered);
  }
  return out;
}

double mvu_two_state_closed(std::uint64_t s, std::uint64_t n, double g) {
  if (n == 0) throw std::invalid_argument("mvu_two_state_closed: need at least one path");
  if (g == 1.0) return double(s) / double(n);
  if (n == 1) {
    double acc = 0.0, w = 1.0;
    for (std::uint64_t i = 0; i < s; ++i, w *= g) acc += w;
    return acc;
  }
  // Weighted average of (1 - g^i)/(1 - g) where w_i is the chance that the
  // first path holds i of the s cycles.
  double w = double(n - 1) / double(s + n - 1);
  double geo = 0.0, acc = 0.0;
  for (std::uint64_t i = 0; i <= s; ++i) {
    acc += w * geo;
    geo = 1.0 + g * geo;
    if (i < s) w *= double(s - i) / double(s + n - 2 - i);
  }
  return acc;
}

double mvu_two_state_mse(double p, double g) {
  return p * (1 - p) * (1 - g) * (1 - g) / ((1 - g * p) * (1 - g * p) * (1 - g * g * p));
}

double ml_two_state_mse(double p, unsigned m) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("ml_two_state_mse: p must lie in (0, 1)");
  if (m < 2) throw std::domain_error("ml_two_state_mse: m must be at least 2");
  const double md = m;
  const double v = md * (1 - p) / (md * (1 - p) + p);
  const double ex = md * (1 - p) * scaled_log_tail(p, m);
  const double ex2 = md * md * (1 - p) * scaled_dilog_tail(p, m);
  return ex2 - 2 * v * ex + v * v;
}

}  // namespace mrplab

#include "mrplab/sampled_estimators.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mrplab/errors.h"

namespace mrplab {
namespace {

// Discounted return from every position of the path.
void returns_of(const PathSample& path, double g, std::vector<double>& out) {
  const std::size_t len = path.states.size();
  out.assign(len, 0.0);
  for (std::size_t t = len - 1; t-- > 0;) out[t] = path.rewards[t] + g * out[t + 1];
}

PerStateEstimate finish(std::vector<double> sum, const std::vector<std::uint64_t>& count) {
  PerStateEstimate e;
  e.defined.assign(sum.size(), false);
  for (std::size_t s = 0; s < sum.size(); ++s) {
    if (count[s] == 0) {
      sum[s] = 0.0;
      continue;
    }
    e.defined[s] = true;
    sum[s] /= double(count[s]);
  }
  e.values = std::move(sum);
  return e;
}

// Step size that a state keeps for the whole episode under replacing traces.
struct EpisodeRates {
  std::vector<std::pair<StateIndex, double>> entries;
  const double* find(StateIndex s) const {
    for (const auto& e : entries)
      if (e.first == s) return &e.second;
    return nullptr;
  }
};

double next_rate(EstimatorState& st, StateIndex s, const TdConfig& cfg) {
  const std::uint64_t k = ++st.updates_seen[s];
  if (cfg.modified && !st.initialized[s]) return 1.0;
  return cfg.rate.at(k);
}

double value_at(const EstimatorState& st, const PathSample& path, std::size_t pos) {
  return pos + 1 == path.states.size() ? 0.0 : st.values[path.states[pos]];
}

// Processes transitions last to `from`, each update applied immediately.
void backward_sweep(EstimatorState& st, const PathSample& path, std::size_t from,
                    const TdConfig& cfg, double g) {
  const std::size_t T = path.transitions();
  const double lam = cfg.lambda;
  EpisodeRates rates;
  double lambda_return = 0.0;  // G_{t+1}
  for (std::size_t t = T; t-- > from;) {
    const StateIndex s = path.states[t];
    const double v_next = value_at(st, path, t + 1);
    double target;
    double alpha;
    if (cfg.trace == TraceKind::accumulating) {
      const double follow = t + 1 == T ? 0.0 : lambda_return;
      target = path.rewards[t] + g * ((1.0 - lam) * v_next + lam * follow);
      alpha = next_rate(st, s, cfg);
    } else {
      // lambda-return cut at the next visit of s, bootstrapped there
      target = 0.0;
      double c = 1.0;
      for (std::size_t u = t; u < T; ++u) {
        target += c * path.rewards[u];
        if (u + 1 == T) break;
        const StateIndex y = path.states[u + 1];
        const double vy = st.values[y];
        if (y == s) {
          target += c * g * vy;
          break;
        }
        target += c * g * (1.0 - lam) * vy;
        c *= g * lam;
        if (c == 0.0) break;
      }
      if (const double* a = rates.find(s)) {
        alpha = *a;
      } else {
        alpha = next_rate(st, s, cfg);
        rates.entries.emplace_back(s, alpha);
      }
    }
    st.values[s] += alpha * (target - st.values[s]);
    st.initialized[s] = true;
    if (cfg.trace == TraceKind::accumulating) lambda_return = target;
  }
}

void online_episode(EstimatorState& st, const PathSample& path, const TdConfig& cfg, double g) {
  const std::size_t T = path.transitions();
  const double decay = g * cfg.lambda;
  std::vector<StateIndex> active;
  std::vector<std::pair<StateIndex, double>> alpha;
  auto alpha_of = [&](StateIndex s) -> double& {
    for (auto& a : alpha)
      if (a.first == s) return a.second;
    alpha.emplace_back(s, 0.0);
    return alpha.back().second;
  };
  EpisodeRates replaced;

  for (std::size_t t = 0; t < T; ++t) {
    const StateIndex s = path.states[t];
    const StateIndex y = path.states[t + 1];
    bool finish_here = false;
    if (cfg.modified && t + 1 < T && !st.initialized[y]) {
      backward_sweep(st, path, t + 1, cfg, g);
      finish_here = true;
    }
    if (cfg.trace == TraceKind::accumulating) {
      alpha_of(s) = next_rate(st, s, cfg);
    } else if (!replaced.find(s)) {
      const double a = next_rate(st, s, cfg);
      replaced.entries.emplace_back(s, a);
      alpha_of(s) = a;
    }
    for (StateIndex x : active) st.traces[x] *= decay;
    bool present = false;
    for (StateIndex x : active) present |= x == s;
    if (!present) active.push_back(s);
    st.traces[s] = cfg.trace == TraceKind::accumulating ? st.traces[s] + 1.0 : 1.0;

    const double delta = path.rewards[t] + g * value_at(st, path, t + 1) - st.values[s];
    for (StateIndex x : active) st.values[x] += alpha_of(x) * st.traces[x] * delta;
    st.initialized[s] = true;
    if (finish_here) break;
  }
  for (StateIndex x : active) st.traces[x] = 0.0;
}

}  // namespace

PerStateEstimate mc_first_visit(std::span<const PathSample> paths, double discount,
                                std::size_t num_states) {
  std::vector<double> sum(num_states, 0.0), ret;
  std::vector<std::uint64_t> count(num_states, 0);
  std::vector<bool> seen(num_states, false);
  for (const auto& path : paths) {
    returns_of(path, discount, ret);
    for (std::size_t t = 0; t < path.states.size(); ++t) {
      const StateIndex s = path.states[t];
      if (seen[s]) continue;
      seen[s] = true;
      sum[s] += ret[t];
      ++count[s];
    }
    for (StateIndex s : path.states) seen[s] = false;
  }
  return finish(std::move(sum), count);
}

PerStateEstimate mc_every_visit(std::span<const PathSample> paths, double discount,
                                std::size_t num_states) {
  std::vector<double> sum(num_states, 0.0), ret;
  std::vector<std::uint64_t> count(num_states, 0);
  for (const auto& path : paths) {
    returns_of(path, discount, ret);
    for (std::size_t t = 0; t < path.states.size(); ++t) {
      sum[path.states[t]] += ret[t];
      ++count[path.states[t]];
    }
  }
  return finish(std::move(sum), count);
}

double LearningRate::at(std::uint64_t k) const {
  if (kind == Kind::constant) return alpha;
  return 1.0 / double(k);
}

void TdConfig::check() const {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ValidationError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  if (rate.kind == LearningRate::Kind::constant && !(rate.alpha > 0.0 && rate.alpha <= 1.0))
    throw ValidationError("constant learning rate must lie in (0, 1], got " +
                          std::to_string(rate.alpha));
}

EstimatorState::EstimatorState(std::size_t n, double initial_value)
    : values(n, initial_value), updates_seen(n, 0), traces(n, 0.0), initialized(n, false) {}

PerStateEstimate EstimatorState::estimate() const {
  PerStateEstimate e;
  e.values = values;
  e.defined = initialized;
  for (std::size_t s = 0; s < values.size(); ++s)
    if (!initialized[s]) e.values[s] = 0.0;
  return e;
}

void td_episode(EstimatorState& state, const PathSample& path, const TdConfig& cfg,
                double discount) {
  cfg.check();
  if (path.states.empty() || path.rewards.size() + 1 != path.states.size())
    throw ValidationError("malformed path");
  for (StateIndex x : path.states)
    if (x >= state.values.size()) throw ValidationError("path state out of range");
  if (path.transitions() == 0) return;
  if (cfg.mode == UpdateMode::offline)
    backward_sweep(state, path, 0, cfg, discount);
  else
    online_episode(state, path, cfg, discount);
}

EstimatorState td_run(std::span<const PathSample> paths, const TdConfig& cfg, double discount,
                      std::size_t num_states) {
  cfg.check();
  EstimatorState st(num_states, cfg.initial_value);
  for (const auto& p : paths) td_episode(st, p, cfg, discount);
  return st;
}

std::vector<double> td0_weights(std::span<const double> alphas) {
  std::vector<double> beta(alphas.size());
  double tail = 1.0;
  for (std::size_t i = alphas.size(); i-- > 0;) {
    beta[i] = alphas[i] * tail;
    tail *= 1.0 - alphas[i];
  }
  return beta;
}

std::vector<double> td0_weights(std::size_t n, const LearningRate& rate) {
  if (n == 0) throw std::invalid_argument("td0_weights: n must be at least 1");
  std::vector<double> alphas(n);
  for (std::size_t k = 0; k < n; ++k) alphas[k] = rate.at(k + 1);
  return td0_weights(alphas);
}

}  // namespace mrplab

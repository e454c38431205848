#include "mrplab/model_estimators.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linalg.h"
#include "mrplab/errors.h"

namespace mrplab {
namespace {

// Rows of unvisited states are zero, so they decouple from the rest of the
// system with value 0; only the visited block is solved.
std::vector<double> solve_empirical(const MlParams& m, double g) {
  const std::size_t n = m.num_states;
  std::vector<StateIndex> idx;
  for (StateIndex i = 0; i < n; ++i)
    if (m.visited[i]) idx.push_back(i);
  const std::size_t k = idx.size();
  std::vector<double> a(k * k, 0.0), b(k, 0.0);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t w = 0; w < k; ++w) a[u * k + w] = -g * m.p(idx[u], idx[w]);
    a[u * k + u] += 1.0;
    b[u] = m.r_expected[idx[u]];
  }
  auto x = detail::solve_or_pinv(k, a, b);
  std::vector<double> v(n, 0.0);
  for (std::size_t u = 0; u < k; ++u) v[idx[u]] = x[u];
  return v;
}

double backup(std::span<const double> v, const MlParams& m, double g, StateIndex s) {
  const std::size_t n = m.num_states;
  double acc = 0.0;
  for (StateIndex j = 0; j < n; ++j) {
    const double p = m.p_bar[s * n + j];
    if (p != 0.0) acc += p * (m.r_bar[s * n + j] + g * v[j]);
  }
  return acc;
}

void check_size(std::span<const double> v, const MlParams& m) {
  if (v.size() != m.num_states) throw ValidationError("value vector has the wrong length");
}

}  // namespace

std::vector<double> ml_value(const MlParams& params, double discount) {
  return solve_empirical(params, discount);
}

std::vector<double> lstd_value(const MlParams& params, double discount) {
  return solve_empirical(params, discount);
}

std::vector<double> bellman_apply(std::span<const double> v, const MlParams& params,
                                  double discount) {
  check_size(v, params);
  std::vector<double> out(params.num_states);
  for (StateIndex s = 0; s < params.num_states; ++s) out[s] = backup(v, params, discount, s);
  return out;
}

std::vector<double> td0_operator_apply(std::span<const double> v, const MlParams& params,
                                       double discount, std::size_t n) {
  if (n < 1) throw std::invalid_argument("td0_operator_apply: step index must be at least 1");
  auto t = bellman_apply(v, params, discount);
  const double keep = double(n - 1) / double(n);
  for (std::size_t s = 0; s < t.size(); ++s) t[s] = keep * v[s] + t[s] / double(n);
  return t;
}

std::vector<double> iml_update(std::vector<double> v, const MlParams& params, double discount,
                               StateIndex s) {
  check_size(v, params);
  if (s >= params.num_states) throw std::out_of_range("iml_update: state out of range");
  v[s] = backup(v, params, discount, s);
  return v;
}

std::vector<double> contraction_prior(std::size_t n, double c) {
  if (n == 0) throw std::invalid_argument("contraction_prior: empty state space");
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("contraction_prior: c must lie in [0, 1]");
  std::vector<double> p(n, 1.0 / double(n));
  if (n == 1) return p;
  for (std::size_t k = 0; k < n; ++k)
    p[k] = (1.0 - c + 2.0 * c * double(k) / double(n - 1)) / double(n);
  return p;
}

void statewise_random_apply_cumulative(std::vector<double>& v, const MlParams& params,
                                       double discount, std::span<const double> cumulative,
                                       Rng& rng) {
  const StateIndex s = rng.pick(cumulative);
  v[s] = backup(v, params, discount, s);
}

std::vector<double> statewise_random_apply(std::vector<double> v, const MlParams& params,
                                           double discount, std::span<const double> prior,
                                           Rng& rng) {
  check_size(v, params);
  if (prior.size() != params.num_states) throw std::invalid_argument("prior has the wrong length");
  std::vector<double> cum(prior.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (!(prior[k] >= 0.0)) throw std::invalid_argument("prior has a negative entry");
    cum[k] = acc += prior[k];
  }
  if (std::abs(acc - 1.0) > 1e-12) throw std::invalid_argument("prior does not sum to 1");
  statewise_random_apply_cumulative(v, params, discount, cum, rng);
  return v;
}

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double operator_norm(const MlParams& params) {
  const std::size_t n = params.num_states;
  double m = 0.0;
  for (StateIndex i = 0; i < n; ++i) {
    double row = 0.0;
    for (StateIndex j = 0; j < n; ++j) row += std::abs(params.p_bar[i * n + j]);
    m = std::max(m, row);
  }
  return m;
}

IterativeMl::IterativeMl(const MrpSpec& topology, double discount)
    : topology_(&topology),
      discount_(discount),
      stat_(topology.num_states),
      values_(topology.num_states, 0.0),
      successors_(topology.num_states) {
  for (StateIndex i = 0; i < topology.num_states; ++i)
    for (StateIndex j = 0; j < topology.num_states; ++j)
      if (topology.has_edge(i, j)) successors_[i].push_back(j);
}

void IterativeMl::update(StateIndex s) {
  const Count k = stat_.visit_counts[s];
  if (k == 0 || topology_->terminal[s]) return;
  double acc = 0.0;
  for (StateIndex j : successors_[s]) {
    const Count c = stat_.mu(s, j);
    if (c) acc += stat_.reward_sum(s, j) + discount_ * double(c) * values_[j];
  }
  values_[s] = acc / double(k);
}

void IterativeMl::observe(const PathSample& path) {
  stat_.add(path, *topology_);
  for (std::size_t t = path.transitions(); t-- > 0;) update(path.states[t]);
}

PerStateEstimate IterativeMl::estimate() const {
  PerStateEstimate e;
  e.values = values_;
  e.defined.assign(values_.size(), false);
  for (StateIndex s = 0; s < values_.size(); ++s) e.defined[s] = stat_.visit_counts[s] > 0;
  return e;
}

}  // namespace mrplab

#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's solvers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "mrplab/mrp.h"

namespace oracle {

// Value by forward power iteration of V <- r + gamma P V from zero.
inline std::vector<double> iterate_value(const mrplab::MrpSpec& s, std::size_t sweeps = 200000,
                                         double tol = 1e-15) {
  const std::size_t n = s.num_states;
  std::vector<double> r(n, 0.0), v(n, 0.0), next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i] += s.p(i, j) * s.reward(i, j).mean();
  for (std::size_t it = 0; it < sweeps; ++it) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = r[i];
      for (std::size_t j = 0; j < n; ++j) acc += s.discount * s.p(i, j) * v[j];
      next[i] = acc;
      delta = std::max(delta, std::abs(acc - v[i]));
    }
    v.swap(next);
    if (delta < tol) break;
  }
  return v;
}

// Brute-force cycle search by DFS from every reachable state.
inline bool has_reachable_cycle(const mrplab::MrpSpec& s) {
  const std::size_t n = s.num_states;
  std::vector<bool> reach(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < n; ++i)
    if (s.start_probs[i] > 0) reach[i] = true, stack.push_back(i);
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (s.p(i, j) > 0 && !reach[j]) reach[j] = true, stack.push_back(j);
  }
  // A cycle exists iff some reachable i can return to itself.
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i]) continue;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> st{i};
    while (!st.empty()) {
      auto a = st.back();
      st.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (s.p(a, b) <= 0) continue;
        if (b == i) return true;
        if (!seen[b]) seen[b] = true, st.push_back(b);
      }
    }
  }
  return false;
}

inline double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed form in its textbook shape; fine for the small s, n used in tests.
inline double mvu_two_state_textbook(unsigned s, unsigned n, double g) {
  if (g == 1.0) return double(s) / n;
  if (n == 1) return (1.0 - std::pow(g, s)) / (1.0 - g);
  double acc = 0.0;
  for (unsigned i = 0; i <= s; ++i) acc += binomial(s + n - 2 - i, n - 2) * std::pow(g, i);
  return 1.0 / (1.0 - g) - acc / ((1.0 - g) * binomial(s + n - 1, n - 1));
}

// Direct series for the single-path ML MSE on the two-state cycle with reward 1
// on the exit edge.
inline double ml_mse_exit_series(double p, double g) {
  const double v = (1 - p) / (1 - g * p);
  double acc = 0.0, w = 1 - p;
  for (int i = 0; i < 200000 && w > 1e-300; ++i) {
    const double pb = double(i) / (i + 1);
    const double x = (1 - pb) / (1 - g * pb);
    acc += w * (x - v) * (x - v);
    w *= p;
  }
  return acc;
}

inline double mc_mse_exit_series(double p, double g) {
  const double v = (1 - p) / (1 - g * p);
  double acc = 0.0, w = 1 - p, gi = 1.0;
  for (int i = 0; i < 200000 && w > 1e-300; ++i) {
    acc += w * (gi - v) * (gi - v);
    w *= p;
    gi *= g;
  }
  return acc;
}

}  // namespace oracle

#include "mrplab/catalog.h"

namespace mrplab::catalog {

MrpSpec two_state_cycle(double p, double discount, double cycle_reward, double exit_reward) {
  auto s = MrpSpec::empty(2, discount);
  s.start_probs[0] = 1.0;
  s.terminal[1] = true;
  s.set_edge(0, 0, p, EdgeReward::deterministic(cycle_reward));
  s.set_edge(0, 1, 1.0 - p, EdgeReward::deterministic(exit_reward));
  return s;
}

MrpSpec entry_cycle(double p, double discount) {
  auto s = MrpSpec::empty(3, discount);
  s.start_probs[1] = 1.0;
  s.terminal[2] = true;
  s.set_edge(1, 0, p, EdgeReward::deterministic(1.0));
  s.set_edge(1, 2, 1.0 - p, EdgeReward::deterministic(0.0));
  s.set_edge(0, 1, 1.0, EdgeReward::deterministic(0.0));
  return s;
}

MrpSpec branching_chain(double discount) {
  auto s = MrpSpec::empty(4, discount);
  s.start_probs[0] = 1.0;
  s.terminal[2] = s.terminal[3] = true;
  s.set_edge(0, 1, 1.0, EdgeReward::discrete({{-1.0, 0.5}, {1.0, 0.5}}));
  s.set_edge(1, 2, 0.5, EdgeReward::deterministic(1.0));
  s.set_edge(1, 3, 0.5, EdgeReward::deterministic(-1.0));
  return s;
}

MrpSpec merge_chain(double discount) {
  auto s = MrpSpec::empty(4, discount);
  s.start_probs[0] = s.start_probs[1] = 0.5;
  s.terminal[3] = true;
  s.set_edge(0, 2, 1.0, EdgeReward::deterministic(0.0));
  s.set_edge(1, 2, 1.0, EdgeReward::deterministic(0.0));
  s.set_edge(2, 3, 1.0, EdgeReward::discrete({{-1.0, 0.5}, {1.0, 0.5}}));
  return s;
}

MrpSpec five_state_acyclic(double discount) {
  auto s = MrpSpec::empty(5, discount);
  s.start_probs[0] = 1.0;
  s.terminal[3] = s.terminal[4] = true;
  s.set_edge(0, 1, 0.5);
  s.set_edge(0, 2, 0.5);
  s.set_edge(1, 2, 1.0);
  s.set_edge(2, 3, 0.5, EdgeReward::deterministic(1.0));
  s.set_edge(2, 4, 0.5, EdgeReward::deterministic(-1.0));
  return s;
}

MrpSpec chain(std::size_t n, double discount) {
  auto s = MrpSpec::empty(n, discount);
  s.start_probs[0] = 1.0;
  s.terminal[n - 1] = true;
  for (StateIndex i = 0; i + 1 < n; ++i) s.set_edge(i, i + 1, 1.0, EdgeReward::deterministic(1.0));
  return s;
}

}  // namespace mrplab::catalog

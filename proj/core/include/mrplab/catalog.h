#pragma once

#include "mrplab/mrp.h"

namespace mrplab::catalog {

// State 0 loops to itself with probability p and exits to terminal state 1.
MrpSpec two_state_cycle(double p, double discount, double cycle_reward, double exit_reward);

// Start in state 1; 1 -> 0 with probability p (reward 1), 0 -> 1 always,
// 1 -> terminal 2 otherwise.
MrpSpec entry_cycle(double p, double discount = 1.0);

// 0 -> 1 with reward +-1, then 1 -> 2 (+1) or 1 -> 3 (-1), each with probability 1/2.
MrpSpec branching_chain(double discount = 1.0);

// 0 -> 2 and 1 -> 2 with reward 0, 2 -> terminal 3 with reward +-1.
// Start in 0 or 1 with probability 1/2 each.
MrpSpec merge_chain(double discount = 1.0);

// 0 -> {1, 2}, 1 -> 2, 2 -> 3 (+1) or 2 -> 4 (-1); all other rewards 0.
MrpSpec five_state_acyclic(double discount);

// Deterministic chain 0 -> 1 -> ... -> n-1 with unit rewards.
MrpSpec chain(std::size_t n, double discount = 1.0);

}  // namespace mrplab::catalog

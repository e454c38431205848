#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mrplab/catalog.h"
#include "mrplab/errors.h"
#include "mrplab/stats.h"
#include "mrplab/sufficient_stats.h"

namespace mrplab {
namespace {

PathSample path(std::vector<StateIndex> s, std::vector<double> r) { return {std::move(s), std::move(r)}; }

TEST(Accumulate, SimpleChain) {
  auto topo = catalog::chain(3);
  SuffStat st(3);
  st.add(path({0, 1, 2}, {1, 1}), topo);
  EXPECT_EQ(st.start_counts, (std::vector<Count>{1, 0, 0}));
  EXPECT_EQ(st.mu(0, 1), 1u);
  EXPECT_EQ(st.mu(1, 2), 1u);
  EXPECT_EQ(st.visit_counts, (std::vector<Count>{1, 1, 1}));
  EXPECT_EQ(st.num_paths, 1u);
  EXPECT_TRUE(st.check(&topo).empty());
}

TEST(Accumulate, TwoStateCycleCounts) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto st = accumulate(SuffStat(2), path({0, 0, 0, 1}, {1, 1, 0}), topo);
  EXPECT_EQ(st.mu(0, 0), 2u);
  EXPECT_EQ(st.mu(0, 1), 1u);
  EXPECT_EQ(st.visit_counts[0], 3u);
  EXPECT_DOUBLE_EQ(st.reward_sum(0, 0), 2.0);
}

TEST(Accumulate, RejectsMissingEdge) {
  auto topo = catalog::chain(3);
  SuffStat st(3);
  EXPECT_THROW(st.add(path({0, 2}, {1}), topo), ValidationError);
  EXPECT_THROW(st.add(path({0, 1, 2}, {1}), topo), ValidationError);
}

TEST(Accumulate, DiscreteRewardEvents) {
  auto topo = catalog::merge_chain();
  SuffStat st(4);
  st.add(path({0, 2, 3}, {0, 1}), topo);
  st.add(path({1, 2, 3}, {0, -1}), topo);
  st.add(path({1, 2, 3}, {0, 1}), topo);
  auto ev = st.reward_events.at({2, 3});
  EXPECT_EQ(ev, (std::vector<Count>{1, 2}));
  EXPECT_TRUE(st.check(&topo).empty());
  EXPECT_THROW(st.add(path({1, 2, 3}, {0, 0.5}), topo), ValidationError);
}

TEST(Accumulate, OrderIndependent) {
  auto topo = catalog::entry_cycle(0.5);
  std::vector<PathSample> ps{path({1, 2}, {0}), path({1, 0, 1, 2}, {1, 0, 0}),
                             path({1, 0, 1, 0, 1, 2}, {1, 0, 1, 0, 0})};
  std::vector<int> idx{0, 1, 2};
  auto ref = accumulate(ps, topo);
  do {
    SuffStat st(3);
    for (int i : idx) st.add(ps[i], topo);
    EXPECT_EQ(st, ref);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST(Merge, AssociativeAndMatchesSequential) {
  auto topo = catalog::entry_cycle(0.5);
  std::vector<PathSample> ps{path({1, 2}, {0}), path({1, 0, 1, 2}, {1, 0, 0}),
                             path({1, 0, 1, 0, 1, 2}, {1, 0, 1, 0, 0})};
  SuffStat a(3), b(3), c(3);
  a.add(ps[0], topo);
  b.add(ps[1], topo);
  c.add(ps[2], topo);
  EXPECT_EQ(merge(merge(a, b), c), merge(a, merge(b, c)));
  EXPECT_EQ(merge(merge(a, b), c), accumulate(ps, topo));
}

TEST(MlParams, TwoStateCycle) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto st = accumulate(SuffStat(2), path({0, 0, 0, 0, 1}, {1, 1, 1, 0}), topo);
  auto m = ml_params(st);
  EXPECT_DOUBLE_EQ(m.p(0, 0), 0.75);
  EXPECT_DOUBLE_EQ(m.p(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(m.r(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(m.start_bar[0], 1.0);
  EXPECT_DOUBLE_EQ(m.r_expected[0], 0.75);
}

TEST(MlParams, ChainAndEmpty) {
  auto topo = catalog::chain(3);
  auto st = accumulate(SuffStat(3), path({0, 1, 2}, {1, 1}), topo);
  auto m = ml_params(st);
  EXPECT_EQ(m.p(0, 1), 1.0);
  EXPECT_EQ(m.start_bar[0], 1.0);
  for (StateIndex j = 0; j < 3; ++j) EXPECT_EQ(m.p(2, j), 0.0);
  EXPECT_THROW(ml_params(SuffStat(3)), ValidationError);
}

// Independent counter over raw paths.
TEST(MlParams, MatchesBruteForceCounting) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    auto topo = MrpSpec::empty(n, 1.0);
    topo.terminal[n - 1] = true;
    for (std::size_t i = 0; i < n; ++i) topo.start_probs[i] = i + 1 < n ? 1.0 / double(n - 1) : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        topo.set_edge(i, j, 1.0 / double(n), EdgeReward::deterministic(double(i * n + j)));
    PathSampler sampler(topo);
    std::vector<PathSample> ps;
    const int np = 1 + trial % 5;
    for (int k = 0; k < np; ++k) ps.push_back(sampler.sample(rng));
    auto m = ml_params(accumulate(ps, topo));
    for (std::size_t i = 0; i < n; ++i) {
      double visits = 0, starts = 0;
      std::vector<double> trans(n, 0.0);
      for (const auto& p : ps) {
        starts += p.states[0] == i;
        for (std::size_t t = 0; t < p.states.size(); ++t) {
          visits += p.states[t] == i;
          if (t + 1 < p.states.size() && p.states[t] == i) trans[p.states[t + 1]] += 1;
        }
      }
      EXPECT_DOUBLE_EQ(m.start_bar[i], starts / np);
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double expect = visits > 0 && !topo.terminal[i] ? trans[j] / visits : 0.0;
        EXPECT_DOUBLE_EQ(m.p(i, j), expect);
        row += m.p(i, j);
        if (trans[j] > 0) EXPECT_DOUBLE_EQ(m.r(i, j), double(i * n + j));
      }
      if (visits > 0 && !topo.terminal[i]) EXPECT_NEAR(row, 1.0, 1e-12);
    }
    double sb = 0;
    for (double x : m.start_bar) sb += x;
    EXPECT_NEAR(sb, 1.0, 1e-12);
  }
}

TEST(MlParams, CycleProbabilityUnderestimated) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  PathSampler sampler(topo);
  Rng rng(23);
  std::vector<double> pb;
  for (int k = 0; k < 100000; ++k) {
    SuffStat st(2);
    st.add(sampler.sample(rng), topo);
    pb.push_back(ml_params(st).p(0, 0));
  }
  auto m = mean_with_error(pb);
  EXPECT_LT(m.mean + 3 * m.std_error, 0.5);
}

TEST(FullInformation, Cases) {
  auto chain = catalog::chain(4);
  std::vector<PathSample> a{path({0, 1, 2, 3}, {1, 1, 1}), path({0, 1, 2, 3}, {1, 1, 1})};
  auto fa = full_information_states(accumulate(a, chain), a);
  EXPECT_TRUE(fa[0]);

  auto branch = catalog::branching_chain();
  std::vector<PathSample> b{path({0, 1, 3}, {1, -1}), path({1, 2}, {1})};
  auto fb = full_information_states(accumulate(b, branch), b);
  EXPECT_FALSE(fb[0]);
  EXPECT_TRUE(fb[1]);

  auto cyc = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  std::vector<PathSample> c{path({0, 0, 0, 1}, {1, 1, 0})};
  EXPECT_TRUE(full_information_states(accumulate(c, cyc), c)[0]);

  auto entry = catalog::entry_cycle(0.5);
  std::vector<PathSample> d{path({1, 0, 1, 2}, {1, 0, 0})};
  auto fd = full_information_states(accumulate(d, entry), d);
  EXPECT_FALSE(fd[0]);
  EXPECT_TRUE(fd[1]);
}

}  // namespace
}  // namespace mrplab

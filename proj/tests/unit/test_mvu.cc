#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mrplab/catalog.h"
#include "mrplab/errors.h"
#include "mrplab/model_estimators.h"
#include "mrplab/mvu.h"
#include "mrplab/stats.h"
#include "oracles.h"

namespace mrplab {
namespace {

PathSample path(std::vector<StateIndex> s, std::vector<double> r) { return {std::move(s), std::move(r)}; }

PathSample cycle_path(int cycles) {
  std::vector<StateIndex> s(cycles + 1, 0);
  s.push_back(1);
  std::vector<double> r(cycles, 1.0);
  r.push_back(0.0);
  return path(s, r);
}

std::vector<PathSample> cycle_paths(const std::vector<int>& cycles) {
  std::vector<PathSample> ps;
  for (int c : cycles) ps.push_back(cycle_path(c));
  return ps;
}

TEST(Enumerate, TwoPathCycleExample) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto ps = cycle_paths({2, 0});
  auto fam = enumerate_consistent(accumulate(ps, topo), topo);
  EXPECT_EQ(fam.total_ordered_count, 3u);
  EXPECT_EQ(fam.multiset_count, 2u);
  ASSERT_EQ(fam.multisets.size(), 2u);
  std::uint64_t total = 0;
  for (const auto& m : fam.multisets) {
    total += m.multiplicity;
    EXPECT_EQ(accumulate(m.paths, topo), accumulate(ps, topo));
  }
  EXPECT_EQ(total, 3u);
}

TEST(Enumerate, BranchingExampleHasFourVectors) {
  auto topo = catalog::branching_chain(1.0);
  std::vector<PathSample> ps{path({0, 1, 3}, {1, -1}), path({1, 2}, {1})};
  auto stat = accumulate(ps, topo);
  auto fam = enumerate_consistent(stat, topo);
  EXPECT_EQ(fam.total_ordered_count, 4u);
  bool swapped = false;
  for (const auto& m : fam.multisets) {
    EXPECT_EQ(m.multiplicity, 2u);
    EXPECT_EQ(accumulate(m.paths, topo), stat);
    for (const auto& p : m.paths)
      if (p.states == std::vector<StateIndex>{0, 1, 2}) swapped = true;
  }
  EXPECT_TRUE(swapped);
  auto v = mvu_estimate(stat, topo, 1.0);
  EXPECT_NEAR(v.values[0], 1.0, 1e-15);
  EXPECT_NEAR(v.values[1], 0.0, 1e-15);
}

TEST(Enumerate, SinglePathAcyclicChain) {
  auto topo = catalog::chain(5);
  std::vector<PathSample> ps{path({0, 1, 2, 3, 4}, {1, 1, 1, 1})};
  auto fam = enumerate_consistent(accumulate(ps, topo), topo);
  EXPECT_EQ(fam.total_ordered_count, 1u);
  EXPECT_EQ(fam.multisets.at(0).paths.at(0).states, ps[0].states);
}

TEST(Enumerate, RepeatedPathsMultiplicity) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto fam = enumerate_consistent(accumulate(cycle_paths({1, 1, 1}), topo), topo);
  // Three cycles over three paths: (3,0,0) x3, (2,1,0) x6, (1,1,1) x1.
  EXPECT_EQ(fam.total_ordered_count, 10u);
  EXPECT_EQ(fam.multiset_count, 3u);
  EXPECT_EQ(fam.total_ordered_count, oracle::binomial(3 + 2, 2));
}

TEST(Enumerate, DiscreteRewardEventsConstrainFamily) {
  auto topo = catalog::merge_chain(1.0);
  std::vector<PathSample> ps{path({0, 2, 3}, {0, 1}), path({1, 2, 3}, {0, -1})};
  auto stat = accumulate(ps, topo);
  auto fam = enumerate_consistent(stat, topo);
  EXPECT_EQ(fam.total_ordered_count, 4u);
  for (const auto& m : fam.multisets) EXPECT_EQ(accumulate(m.paths, topo), stat);
}

TEST(Mvu, CycleExampleValue) {
  for (double g : {0.2, 0.5, 0.9, 1.0}) {
    auto topo = catalog::two_state_cycle(0.5, g, 1.0, 0.0);
    auto v = mvu_estimate(accumulate(cycle_paths({2, 0}), topo), topo, g);
    EXPECT_NEAR(v.values[0], (2 + g) / 3, 1e-14);
    EXPECT_TRUE(v.defined[0]);
  }
}

TEST(Mvu, EntryCycleIgnoresFirstTransition) {
  auto topo = catalog::entry_cycle(0.5, 1.0);
  std::vector<PathSample> ps{path({1, 0, 1, 2}, {1, 0, 0})};
  auto v = mvu_estimate(accumulate(ps, topo), topo, 1.0);
  EXPECT_EQ(v.values[0], 0.0);
  EXPECT_EQ(v.values[1], 1.0);
  EXPECT_EQ(v.values[2], 0.0);
}

TEST(Mvu, FullInformationEqualsFirstVisitMc) {
  auto topo = catalog::two_state_cycle(0.4, 1.0, 1.0, 0.0);
  auto ps = cycle_paths({3, 0, 2, 1});
  auto v = mvu_estimate(accumulate(ps, topo), topo, 1.0);
  auto mc = mc_first_visit(ps, 1.0, 2);
  EXPECT_NEAR(v.values[0], mc.values[0], 1e-14);
}

TEST(ClosedForm, MatchesTextbookAndLimits) {
  for (unsigned n : {1u, 2u, 3u, 5u})
    for (unsigned s : {0u, 1u, 4u, 9u})
      for (double g : {0.0, 0.3, 0.7, 0.99}) {
        const double want = oracle::mvu_two_state_textbook(s, n, g);
        EXPECT_NEAR(mvu_two_state_closed(s, n, g), want, 1e-10 * std::max(1.0, std::abs(want)))
            << s << " " << n << " " << g;
      }
  for (unsigned n : {1u, 2u, 7u}) {
    EXPECT_DOUBLE_EQ(mvu_two_state_closed(6, n, 1.0), 6.0 / n);
    for (double g : {0.1, 0.5, 1.0}) EXPECT_EQ(mvu_two_state_closed(0, n, g), 0.0);
  }
  EXPECT_THROW(mvu_two_state_closed(1, 0, 0.5), std::invalid_argument);
}

TEST(ClosedForm, LargeCountsStayFinite) {
  const double v = mvu_two_state_closed(100000, 5000, 0.95);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 20.0);
}

TEST(ClosedForm, MatchesEnumeration) {
  for (double g : {0.3, 0.8}) {
    auto topo = catalog::two_state_cycle(0.5, g, 1.0, 0.0);
    for (auto cycles : std::vector<std::vector<int>>{{4, 0}, {1, 3}, {2, 2, 1}, {0, 0, 3, 2}}) {
      auto ps = cycle_paths(cycles);
      std::uint64_t s = 0;
      for (int c : cycles) s += c;
      auto v = mvu_estimate(accumulate(ps, topo), topo, g);
      EXPECT_NEAR(v.values[0], mvu_two_state_closed(s, cycles.size(), g), 1e-12);
    }
  }
}

TEST(Mvu, EqualsMlOnAcyclic) {
  auto topo = catalog::five_state_acyclic(0.8);
  std::vector<PathSample> ps{path({0, 2, 3}, {0, 1}), path({0, 1, 2, 4}, {0, 0, -1}),
                             path({0, 1, 2, 3}, {0, 0, 1})};
  auto stat = accumulate(ps, topo);
  auto v = mvu_estimate(stat, topo, 0.8);
  auto ml = ml_value(ml_params(stat), 0.8);
  for (StateIndex s = 0; s < 3; ++s) EXPECT_NEAR(v.values[s], ml[s], 1e-12);
}

TEST(Errors, InfeasibleStatistic) {
  auto topo = MrpSpec::empty(3, 1.0);
  topo.start_probs[0] = topo.start_probs[1] = 0.5;
  topo.terminal[2] = true;
  topo.set_edge(0, 2, 1.0);
  topo.set_edge(1, 1, 0.5);
  topo.set_edge(1, 2, 0.5);
  SuffStat st(3);
  st.num_paths = 1;
  st.start_counts = {1, 0, 0};
  st.transition_counts[0 * 3 + 2] = 1;
  st.transition_counts[1 * 3 + 1] = 1;
  st.visit_counts = {1, 1, 1};
  ASSERT_TRUE(st.check(&topo).empty());
  EXPECT_THROW(enumerate_consistent(st, topo), InfeasibleError);
  EXPECT_THROW(mvu_estimate(st, topo, 1.0), InfeasibleError);
}

TEST(Errors, InconsistentStatistic) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto st = accumulate(cycle_paths({1}), topo);
  st.visit_counts[0] += 1;
  EXPECT_THROW(enumerate_consistent(st, topo), ValidationError);
}

TEST(Errors, VectorCap) {
  auto topo = catalog::two_state_cycle(0.5, 1.0, 1.0, 0.0);
  auto stat = accumulate(cycle_paths({3, 3, 3, 3}), topo);
  EnumerationLimits lim;
  lim.max_vectors = 5;
  try {
    enumerate_consistent(stat, topo, lim);
    FAIL() << "cap not enforced";
  } catch (const ResourceLimitError& e) {
    EXPECT_EQ(e.cap(), "limit-vectors");
  }
  lim.max_vectors = std::numeric_limits<std::uint64_t>::max();
  lim.max_seconds = 0.0;
  auto big = accumulate(cycle_paths({20, 20, 20, 20, 20, 20, 20, 20}), topo);
  try {
    enumerate_consistent(big, topo, lim);
    FAIL() << "deadline not enforced";
  } catch (const ResourceLimitError& e) {
    EXPECT_EQ(e.cap(), "limit-seconds");
  }
}

TEST(Determinism, ThreadCountDoesNotChangeResult) {
  auto topo = catalog::entry_cycle(0.5, 0.9);
  PathSampler sampler(topo);
  Rng rng(4);
  std::vector<PathSample> ps;
  for (int k = 0; k < 6; ++k) ps.push_back(sampler.sample(rng));
  auto stat = accumulate(ps, topo);
  EnumerationLimits one, four;
  four.threads = 4;
  auto a = enumerate_consistent(stat, topo, one);
  auto b = enumerate_consistent(stat, topo, four);
  ASSERT_EQ(a.multisets.size(), b.multisets.size());
  EXPECT_EQ(a.total_ordered_count, b.total_ordered_count);
  for (std::size_t i = 0; i < a.multisets.size(); ++i) {
    EXPECT_EQ(a.multisets[i].multiplicity, b.multisets[i].multiplicity);
    ASSERT_EQ(a.multisets[i].paths.size(), b.multisets[i].paths.size());
    for (std::size_t j = 0; j < a.multisets[i].paths.size(); ++j)
      EXPECT_EQ(a.multisets[i].paths[j].states, b.multisets[i].paths[j].states);
  }
  EXPECT_EQ(mvu_estimate(stat, topo, 0.9, one).values, mvu_estimate(stat, topo, 0.9, four).values);
}

TEST(Unbiased, TwoPathsDiscounted) {
  const double p = 0.5, g = 0.7;
  auto spec = catalog::two_state_cycle(p, g, 1.0, 0.0);
  PathSampler sampler(spec);
  Rng rng(5);
  std::vector<double> xs;
  for (int k = 0; k < 100000; ++k) {
    auto a = sampler.sample(rng), b = sampler.sample(rng);
    xs.push_back(mvu_two_state_closed(a.transitions() + b.transitions() - 2, 2, g));
  }
  auto m = mean_with_error(xs);
  EXPECT_LT(std::abs(m.mean - p / (1 - g * p)), 3 * m.std_error);
}

TEST(Mse, SinglePathFormulaMatchesSeries) {
  for (double p : {0.1, 0.5, 0.9})
    for (double g : {0.3, 0.5, 0.9}) {
      // Cycle reward convention: the MC estimate is (1 - g^i)/(1 - g) around p/(1 - g p).
      const double v = p / (1 - g * p);
      double acc = 0.0, w = 1 - p, gi = 1.0;
      for (int i = 0; i < 100000 && w > 1e-300; ++i) {
        const double x = (1 - gi) / (1 - g);
        acc += w * (x - v) * (x - v);
        w *= p;
        gi *= g;
      }
      const double scale = (1 - g) * (1 - g);
      EXPECT_NEAR(mvu_two_state_mse(p, g), acc * scale, 1e-12);
      EXPECT_NEAR(mvu_two_state_mse(p, g), oracle::mc_mse_exit_series(p, g), 1e-12);
    }
}

}  // namespace
}  // namespace mrplab

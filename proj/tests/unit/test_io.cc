#include <gtest/gtest.h>

#include <clocale>

#include "mrplab/catalog.h"
#include "mrplab/errors.h"
#include "mrplab/io.h"

namespace mrplab {
namespace {

void expect_same(const MrpSpec& a, const MrpSpec& b) {
  ASSERT_EQ(a.num_states, b.num_states);
  EXPECT_EQ(a.start_probs, b.start_probs);
  EXPECT_EQ(a.transitions, b.transitions);
  EXPECT_EQ(a.terminal, b.terminal);
  EXPECT_EQ(a.discount, b.discount);
  for (StateIndex i = 0; i < a.num_states; ++i)
    for (StateIndex j = 0; j < a.num_states; ++j) {
      if (a.p(i, j) == 0.0) continue;
      const auto& ra = a.reward(i, j);
      const auto& rb = b.reward(i, j);
      ASSERT_EQ(ra.outcomes().size(), rb.outcomes().size());
      for (std::size_t k = 0; k < ra.outcomes().size(); ++k) {
        EXPECT_EQ(ra.outcomes()[k].value, rb.outcomes()[k].value);
        EXPECT_EQ(ra.outcomes()[k].probability, rb.outcomes()[k].probability);
      }
    }
}

TEST(MrpJson, RoundTrip) {
  for (const auto& s : {catalog::two_state_cycle(0.3, 0.7, 1.0, 0.0), catalog::entry_cycle(0.5, 1.0),
                        catalog::branching_chain(1.0), catalog::merge_chain(0.9),
                        catalog::five_state_acyclic(1.0), catalog::chain(6, 0.5)}) {
    const auto text = mrp_to_json(s);
    auto back = parse_mrp(text);
    expect_same(s, back);
    EXPECT_EQ(mrp_to_json(back), text);
  }
}

TEST(MrpJson, MinimalFile) {
  auto s = parse_mrp(R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[0.5, 0.5], [0, 0]],
                         "rewards": [{"from": 0, "to": 0, "kind": "det", "value": 1}],
                         "gamma": 1, "terminal": [false, true]})");
  EXPECT_EQ(s.reward(0, 0).mean(), 1.0);
  EXPECT_EQ(s.reward(0, 1).mean(), 0.0);
  EXPECT_NEAR(exact_value(s)[0], 1.0, 1e-12);
}

TEST(MrpJson, Malformed) {
  const std::string good = R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[0.5, 0.5], [0, 0]],
                               "gamma": 1, "terminal": [false, true]})";
  EXPECT_NO_THROW(parse_mrp(good));
  EXPECT_THROW(parse_mrp("{"), ValidationError);
  EXPECT_THROW(parse_mrp("[]"), ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2})"), ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[0.5, 0.6], [0, 0]],
                             "gamma": 1, "terminal": [false, true]})"),
               ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2, "start_probs": [1], "transitions": [[0.5, 0.5], [0, 0]],
                             "gamma": 1, "terminal": [false, true]})"),
               ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[0.5, 0.5], [0, 0]],
                             "rewards": [{"from": 0, "to": 0, "kind": "normal", "value": 1}],
                             "gamma": 1, "terminal": [false, true]})"),
               ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[0.5, 0.5], [0, 0]],
                             "rewards": [{"from": 0, "to": 5, "kind": "det", "value": 1}],
                             "gamma": 1, "terminal": [false, true]})"),
               ValidationError);
  EXPECT_THROW(parse_mrp(R"({"num_states": 2, "start_probs": [1, 0], "transitions": [[1, 0], [0, 0]],
                             "gamma": 1, "terminal": [false, true]})"),
               ValidationError);
  EXPECT_THROW(load_mrp("/nonexistent/file.json"), ValidationError);
}

TEST(SuffStatJson, RoundTrip) {
  auto topo = catalog::branching_chain(1.0);
  std::vector<PathSample> ps{{{0, 1, 3}, {1, -1}}, {{0, 1, 2}, {-1, 1}}, {{0, 1, 2}, {1, 1}}};
  auto st = accumulate(ps, topo);
  const auto text = suffstat_to_json(st);
  auto back = parse_suffstat(text);
  EXPECT_EQ(back, st);
  EXPECT_EQ(suffstat_to_json(back), text);
}

TEST(SuffStatJson, DerivesVisitCounts) {
  auto st = parse_suffstat(R"({"num_states": 2, "num_paths": 2, "start_counts": [2, 0],
                               "transition_counts": [[2, 2], [0, 0]]})");
  EXPECT_EQ(st.visit_counts, (std::vector<Count>{4, 2}));
  EXPECT_THROW(parse_suffstat(R"({"num_states": 2, "num_paths": 2, "start_counts": [2, 0],
                                  "transition_counts": [[2, 1], [0, 0]]})"),
               ValidationError);
  EXPECT_THROW(parse_suffstat(R"({"num_states": 2, "num_paths": 2, "start_counts": [2, 0],
                                  "transition_counts": [[-2, 2], [0, 0]]})"),
               ValidationError);
}

TEST(FormatNumber, LocaleIndependent) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(2.0 / 3.0, 3), "0.667");
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
    EXPECT_EQ(format_number(0.5), "0.5");
    std::setlocale(LC_NUMERIC, "C");
  }
}

}  // namespace
}  // namespace mrplab

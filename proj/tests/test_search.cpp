#include <gtest/gtest.h>

#include "gfix/search.hpp"

using namespace gfix;

TEST(Search, ZeroBudgetFindsNothing) {
  auto r = search_counterexample("dd-lift", {0, 1, 10, 10});
  EXPECT_TRUE(r["findings"].empty());
  EXPECT_EQ(r["message"], "no counterexample found in budget");
}

TEST(Search, LeastDaggerAloneHasNoFindings) {
  // variant 0 is the least fixpoint, which satisfies the double dagger law
  auto r = search_counterexample("dd-lift", {1, 2, 20, 40});
  EXPECT_TRUE(r["findings"].empty());
  EXPECT_EQ(r["scored_law"], "dd");
}

TEST(Search, Deterministic) {
  for (const auto& t : search_targets()) {
    SearchOptions o{4, 9, 10, 10};
    EXPECT_EQ(search_counterexample(t.name, o).dump(), search_counterexample(t.name, o).dump()) << t.name;
  }
}

TEST(Search, ReportFields) {
  auto r = search_counterexample("d2-from-d1", {3, 5, 10, 10});
  for (auto key : {"target", "model", "validated_by", "scored_law", "budget", "seed", "rejected", "findings"})
    EXPECT_TRUE(r.contains(key)) << key;
  EXPECT_EQ(r["validated_by"], (json{"fix", "p", "dd", "d1"}));
  EXPECT_LE(r["rejected"].get<int>(), 3);
}

TEST(Search, UnknownTarget) { EXPECT_THROW(search_target("nope"), std::invalid_argument); }

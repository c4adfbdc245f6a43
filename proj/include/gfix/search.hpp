#pragma once

// Randomised counterexample search over perturbed daggers in the lifting
// model.  A perturbed dagger answers each f with some solution of its
// fixpoint square, chosen by hashing f with a per-variant salt; variants
// that break (fix), (P) or (C) on a sample are rejected before the target
// law is scored.  Findings are data: an empty list only means nothing was
// found within the budget.

#include <cstdint>
#include <string>
#include <vector>

#include "gfix/category.hpp"

namespace gfix {

struct SearchTarget {
  std::string name;
  std::string delay;                    // lift or identity
  std::vector<std::string> validate;    // laws every variant must pass
  std::string score;                    // the law searched for a violation
};

/// dd-lift, d2-conway, d2-from-d1.
const std::vector<SearchTarget>& search_targets();
const SearchTarget& search_target(const std::string& name);

struct SearchOptions {
  int budget = 20;          // number of dagger variants
  std::uint64_t seed = 0;
  int validate_trials = 30;
  int score_trials = 30;
};

/// Variant 0 is always the least-fixpoint dagger.
json search_counterexample(const std::string& target, const SearchOptions& opts);

}  // namespace gfix

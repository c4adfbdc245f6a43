#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfix/category.hpp"

namespace gfix {

/// How a verdict counts towards the exit status of a run.
enum class LawMode {
  assert,          // failures fail the run
  report_only,     // failures are recorded findings
  not_applicable,  // the law's hypotheses fail in this model; nothing run
};

std::string to_string(LawMode m);

struct LawVerdict {
  std::string model;
  std::string law;
  int trials = 0;     // attempted, including discarded
  int failures = 0;
  int discarded = 0;  // false premise or no morphism of the drawn shape
  std::uint64_t seed = 0;
  std::vector<json> witnesses;  // at most kMaxWitnesses, in trial order
  LawMode mode = LawMode::assert;
  std::optional<int> depth;     // comparison depth for depth-k equality

  static constexpr std::size_t kMaxWitnesses = 3;

  int checked() const { return trials - discarded; }
  /// Fewer than 5% of the attempted trials reached the comparison.
  bool under_tested() const;
  bool fails_run() const { return mode == LawMode::assert && failures > 0; }
  /// pass, pass@k, fail, report-only or not-applicable.
  std::string status() const;
};

json to_json(const LawVerdict& v);
LawVerdict verdict_from_json(const json& j);

/// One line per verdict, for --format text.
std::string to_text(const LawVerdict& v);

}  // namespace gfix

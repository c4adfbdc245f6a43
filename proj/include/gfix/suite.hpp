#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfix/verdict.hpp"

namespace gfix {

/// Model size parameters, written `key=value,...` on the command line.
/// Keys: poset (names joined by '+'), set, alphabet, length, base, delay.
struct Sizes {
  std::vector<std::string> posets = {"chain3", "antichain2", "diamond"};
  int set = 3;       // presheaf stage sets and lift posets
  int alphabet = 2;  // cms
  int length = 3;    // cms word length
  int base = 3;      // citm base objects
  std::string delay = "lift";  // cpolift: lift or identity

  json to_json() const;
};

Sizes parse_sizes(const std::string& text);

struct RunConfig {
  std::string model;
  std::vector<std::string> laws;
  int trials = 200;
  std::uint64_t seed = 0;
  std::vector<int> depths = {4, 8, 12};  // citm comparison depths
  Sizes sizes;
  std::string format = "json";

  /// Throws std::invalid_argument.
  void validate() const;
  json to_json() const;
};

const std::vector<std::string>& model_names();

struct LawReport {
  RunConfig config;
  std::vector<LawVerdict> verdicts;

  /// No asserted law failed.
  bool ok() const;
  json to_json() const;
  std::string to_text() const;
};

LawReport run_suite(const RunConfig& cfg, unsigned threads = 0);

}  // namespace gfix

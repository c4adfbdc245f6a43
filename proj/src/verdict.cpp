#include "gfix/verdict.hpp"

#include <sstream>

namespace gfix {

std::string to_string(LawMode m) {
  switch (m) {
    case LawMode::assert:
      return "assert";
    case LawMode::report_only:
      return "report-only";
    case LawMode::not_applicable:
      return "not-applicable";
  }
  return "assert";
}

bool LawVerdict::under_tested() const {
  if (mode == LawMode::not_applicable || trials == 0) return false;
  return checked() * 20 < trials;
}

std::string LawVerdict::status() const {
  if (mode == LawMode::not_applicable) return "not-applicable";
  if (mode == LawMode::report_only) return "report-only";
  if (failures > 0) return "fail";
  return depth ? "pass@" + std::to_string(*depth) : "pass";
}

json to_json(const LawVerdict& v) {
  json j{{"model", v.model},         {"law", v.law},           {"trials", v.trials},
         {"failures", v.failures},   {"discarded", v.discarded}, {"seed", v.seed},
         {"witnesses", v.witnesses}, {"status", v.status()},   {"mode", to_string(v.mode)},
         {"under_tested", v.under_tested()}};
  if (v.depth) j["depth"] = *v.depth;
  return j;
}

LawVerdict verdict_from_json(const json& j) {
  LawVerdict v;
  v.model = j.at("model").get<std::string>();
  v.law = j.at("law").get<std::string>();
  v.trials = j.at("trials").get<int>();
  v.failures = j.at("failures").get<int>();
  v.discarded = j.at("discarded").get<int>();
  v.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& w : j.at("witnesses")) v.witnesses.push_back(w);
  std::string mode = j.value("mode", "assert");
  v.mode = mode == "report-only"      ? LawMode::report_only
           : mode == "not-applicable" ? LawMode::not_applicable
                                      : LawMode::assert;
  if (j.contains("depth")) v.depth = j.at("depth").get<int>();
  return v;
}

std::string to_text(const LawVerdict& v) {
  std::ostringstream os;
  os << v.model << ' ' << v.law << ' ' << v.status() << " trials=" << v.trials
     << " failures=" << v.failures << " discarded=" << v.discarded << " seed=" << v.seed;
  if (v.under_tested()) os << " under-tested";
  return os.str();
}

}  // namespace gfix

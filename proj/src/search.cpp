#include "gfix/search.hpp"

#include <stdexcept>

#include "gfix/cpolift.hpp"
#include "gfix/laws.hpp"

namespace gfix {

using cpolift::LiftModel;

const std::vector<SearchTarget>& search_targets() {
  static const std::vector<SearchTarget> t = {
      {"dd-lift", "lift", {"fix", "p", "c"}, "dd"},
      {"d2-conway", "identity", {"fix", "p", "c", "dd"}, "d2"},
      {"d2-from-d1", "identity", {"fix", "p", "dd", "d1"}, "d2"},
  };
  return t;
}

const SearchTarget& search_target(const std::string& name) {
  for (const auto& t : search_targets())
    if (t.name == name) return t;
  throw std::invalid_argument("unknown search target '" + name + "'");
}

namespace {

Ops<LiftModel>::DaggerFn perturbed(const LiftModel& m, std::uint64_t salt) {
  return [&m, salt](const cpolift::Mor& f) {
    auto h = splitmix64(fnv1a(m.describe(f).dump()) ^ salt);
    if (h % 2 == 0) return m.dagger(f);
    auto sols = enumerate_solutions(m, f);
    if (sols.size() <= 1) return m.dagger(f);
    return sols[static_cast<std::size_t>(splitmix64(h) % sols.size())];
  };
}

}  // namespace

json search_counterexample(const std::string& name, const SearchOptions& opts) {
  const SearchTarget& t = search_target(name);
  if (opts.budget < 0) throw std::invalid_argument("budget must be non-negative");
  LiftModel m(t.delay == "identity" ? cpolift::Delay::identity : cpolift::Delay::lift, 2);
  json findings = json::array();
  int rejected = 0;
  for (int i = 0; i < opts.budget; ++i) {
    std::uint64_t salt = mix_seed(opts.seed, t.name, static_cast<std::uint64_t>(i));
    Ops<LiftModel> ops = i == 0 ? Ops<LiftModel>(m) : Ops<LiftModel>(m, perturbed(m, salt));
    bool valid = true;
    for (const auto& law : t.validate) {
      auto v = run_law(ops, law, opts.validate_trials, salt, 1);
      if (v.failures > 0) {
        valid = false;
        break;
      }
    }
    if (!valid) {
      ++rejected;
      continue;
    }
    auto v = run_law(ops, t.score, opts.score_trials, salt, 1);
    v.mode = LawMode::report_only;
    if (v.failures > 0)
      findings.push_back(json{{"variant", i}, {"salt", salt}, {"least_dagger", i == 0}, {"verdict", to_json(v)}});
  }
  json out{{"target", t.name},         {"model", m.name()}, {"validated_by", t.validate},
           {"scored_law", t.score},    {"budget", opts.budget}, {"seed", opts.seed},
           {"rejected", rejected},     {"findings", findings}};
  if (findings.empty()) out["message"] = "no counterexample found in budget";
  return out;
}

}  // namespace gfix

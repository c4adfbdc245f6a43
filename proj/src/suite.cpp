#include "gfix/suite.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "gfix/citm.hpp"
#include "gfix/cms.hpp"
#include "gfix/cpolift.hpp"
#include "gfix/laws.hpp"
#include "gfix/presheaf.hpp"

namespace gfix {

namespace {

int parse_int(const std::string& key, const std::string& v, int lo, int hi) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument("sizes: " + key + " needs an integer, got '" + v + "'");
  if (n < lo || n > hi)
    throw std::invalid_argument("sizes: " + key + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  return n;
}

template <GuardedModel M>
void run_all(const M& m, const RunConfig& cfg, unsigned threads, std::vector<LawVerdict>& out) {
  for (const auto& law : cfg.laws) out.push_back(run_law(m, law, cfg.trials, cfg.seed, threads));
}

}  // namespace

json Sizes::to_json() const {
  return json{{"poset", posets}, {"set", set},   {"alphabet", alphabet},
              {"length", length}, {"base", base}, {"delay", delay}};
}

Sizes parse_sizes(const std::string& text) {
  Sizes s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("sizes: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq), val = item.substr(eq + 1);
    if (key == "poset") {
      s.posets.clear();
      std::stringstream ps(val);
      std::string p;
      while (std::getline(ps, p, '+')) {
        presheaf::FinPoset::named(p);  // validates the name
        s.posets.push_back(p);
      }
      if (s.posets.empty()) throw std::invalid_argument("sizes: empty poset list");
    } else if (key == "set") {
      s.set = parse_int(key, val, 1, 4);
    } else if (key == "alphabet") {
      s.alphabet = parse_int(key, val, 2, 3);
    } else if (key == "length") {
      s.length = parse_int(key, val, 1, 4);
    } else if (key == "base") {
      s.base = parse_int(key, val, 1, 4);
    } else if (key == "delay") {
      if (val != "lift" && val != "identity") throw std::invalid_argument("sizes: delay must be lift or identity");
      s.delay = val;
    } else {
      throw std::invalid_argument("sizes: unknown key '" + key + "'");
    }
  }
  return s;
}

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = {"presheaf", "cpolift", "citm", "cms"};
  return names;
}

void RunConfig::validate() const {
  if (std::find(model_names().begin(), model_names().end(), model) == model_names().end())
    throw std::invalid_argument("unknown model '" + model + "'");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (depths.empty()) throw std::invalid_argument("no comparison depth");
  for (int d : depths)
    if (d < 1) throw std::invalid_argument("depth must be at least 1");
  if (laws.empty()) throw std::invalid_argument("no laws selected");
  if (format != "json" && format != "text") throw std::invalid_argument("format must be json or text");
}

json RunConfig::to_json() const {
  json j{{"model", model}, {"laws", laws}, {"trials", trials}, {"seed", seed}, {"sizes", sizes.to_json()}};
  if (model == "citm") j["depths"] = depths;
  return j;
}

bool LawReport::ok() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const LawVerdict& v) { return v.fails_run(); });
}

json LawReport::to_json() const {
  json vs = json::array();
  int failures = 0;
  for (const auto& v : verdicts) {
    vs.push_back(gfix::to_json(v));
    if (v.fails_run()) failures += v.failures;
  }
  return json{{"config", config.to_json()}, {"verdicts", vs}, {"failures", failures}, {"ok", ok()}};
}

std::string LawReport::to_text() const {
  std::string s;
  for (const auto& v : verdicts) s += gfix::to_text(v) + "\n";
  s += ok() ? "ok\n" : "FAILED\n";
  return s;
}

LawReport run_suite(const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  LawReport r{cfg, {}};
  const Sizes& s = cfg.sizes;
  if (cfg.model == "presheaf") {
    for (const auto& p : s.posets) {
      presheaf::PresheafModel m(presheaf::FinPoset::named(p), presheaf::GenOptions{s.set, 256});
      run_all(m, cfg, threads, r.verdicts);
    }
  } else if (cfg.model == "cpolift") {
    cpolift::LiftModel m(s.delay == "identity" ? cpolift::Delay::identity : cpolift::Delay::lift, s.set);
    run_all(m, cfg, threads, r.verdicts);
  } else if (cfg.model == "cms") {
    cms::CmsModel m(s.alphabet, s.length);
    run_all(m, cfg, threads, r.verdicts);
  } else {
    for (int d : cfg.depths) {
      citm::CitmModel m(d, tree::Signature::standard(), s.base);
      run_all(m, cfg, threads, r.verdicts);
    }
  }
  return r;
}

}  // namespace gfix

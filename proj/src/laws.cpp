#include "gfix/laws.hpp"

#include <set>
#include <sstream>

namespace gfix {

const std::vector<std::string>& all_laws() {
  static const std::vector<std::string> laws = {
      "fix", "p",  "c",  "dd", "u",  "bekic", "bekic-dd", "point", "d",    "d1",        "d2",       "v1",
      "v2",  "s",  "y",  "lt", "rt", "sl",    "tu",       "fptr",  "htr", "rt-dagger", "rt-trace", "transfer"};
  return laws;
}

const std::map<std::string, std::vector<std::string>>& law_groups() {
  static const std::map<std::string, std::vector<std::string>> groups = {
      {"conway", {"fix", "p", "c", "dd", "u"}},
      {"derived", {"bekic", "bekic-dd", "point", "fptr", "htr", "transfer"}},
      {"dinat", {"d", "d1", "d2"}},
      {"trace", {"v1", "v2", "s", "y", "lt", "rt", "sl", "tu"}},
      {"roundtrip", {"rt-dagger", "rt-trace"}},
  };
  return groups;
}

std::vector<std::string> select_laws(const std::string& selector) {
  std::set<std::string> chosen;
  std::stringstream ss(selector);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    any = true;
    if (item == "all") {
      chosen.insert(all_laws().begin(), all_laws().end());
    } else if (auto g = law_groups().find(item); g != law_groups().end()) {
      chosen.insert(g->second.begin(), g->second.end());
    } else if (std::find(all_laws().begin(), all_laws().end(), item) != all_laws().end()) {
      chosen.insert(item);
    } else {
      throw std::invalid_argument("unknown law or group: " + item);
    }
  }
  if (!any) throw std::invalid_argument("empty law selector");
  std::vector<std::string> out;
  for (const auto& l : all_laws())
    if (chosen.count(l)) out.push_back(l);
  return out;
}

}  // namespace gfix

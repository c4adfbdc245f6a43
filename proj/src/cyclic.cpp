#include "gfix/cyclic.hpp"

#include <stdexcept>

namespace gfix {

CyclicGroupReport cyclic_group_witness(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("group order must be between 1 and 6");
  CyclicGroupReport r;
  r.order = n;
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  for (;;) {
    ++r.candidates;
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = s[static_cast<std::size_t>(x)] == (s[static_cast<std::size_t>(x)] + x) % n;
    if (ok) r.solutions.push_back(s);
    int i = n - 1;
    while (i >= 0 && ++s[static_cast<std::size_t>(i)] == n) s[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return r;
}

json to_json(const CyclicGroupReport& r) {
  return json{{"order", r.order}, {"candidates", r.candidates}, {"solutions", r.solutions}};
}

}  // namespace gfix

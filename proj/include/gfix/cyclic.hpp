#pragma once

// Cyclic groups Z_n with the identity delay: a guarded fixpoint s for
// h = + : Z_n x Z_n -> Z_n would satisfy s(x) = s(x) + x for every x.

#include <vector>

#include "gfix/category.hpp"

namespace gfix {

struct CyclicGroupReport {
  int order = 0;
  long candidates = 0;
  /// Tables s : Z_n -> Z_n with s(x) = s(x) + x, in lexicographic order.
  std::vector<std::vector<int>> solutions;
};

/// Exhaustive search over all n^n set maps; n in 1..6.
CyclicGroupReport cyclic_group_witness(int n);
json to_json(const CyclicGroupReport& r);

}  // namespace gfix

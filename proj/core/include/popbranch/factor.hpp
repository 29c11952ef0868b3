#pragma once

#include <vector>

#include "popbranch/instance.hpp"
#include "popbranch/popularity.hpp"

namespace popbranch {

/// Dual family with the iteration in which each set's entry point was
/// deactivated.
struct LayeredFamily {
  std::vector<NodeSet> sets;
  std::vector<int> layers;  // 1-based iteration index per set

  /// Longest chain X1 ⊂ X2 ⊂ ... in the family.
  int depth() const;
};

struct FactorResult {
  Branching arborescence;
  int t_bound = 0;     // iterations - 1
  int iterations = 0;
  LayeredFamily family;
  std::vector<int> active_after;  // active node count after each iteration
};

/// Activation/deactivation algorithm; requires strict rankings
/// (Error NotStrictRanking otherwise).
FactorResult low_factor_arborescence(const RootedInstance& rooted);

/// floor(log2 n) for n >= 1.
int floor_log2(int n);

}  // namespace popbranch

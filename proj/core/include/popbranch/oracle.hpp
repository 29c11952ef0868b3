#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "popbranch/instance.hpp"
#include "popbranch/popularity.hpp"

namespace popbranch {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

/// Π_v (indeg(v)+1), saturating at UINT64_MAX.
std::uint64_t parent_map_count(const Instance& inst);

/// Calls `visit` on every acyclic parent map, in lexicographic order of
/// per-node choices (none first, then in-edges in index order; node 0 most
/// significant). Stops early when `visit` returns false. Error(BudgetExceeded)
/// if parent_map_count exceeds `budget`.
void for_each_branching(const Instance& inst, std::uint64_t budget, const std::function<bool(const Branching&)>& visit);
std::vector<Branching> enumerate_branchings(const Instance& inst, std::uint64_t budget = kDefaultOracleBudget);

struct OracleOptions {
  std::uint64_t budget = kDefaultOracleBudget;
  int jobs = 1;
};

/// max over all branchings B' of φ(B',B) − φ(B,B'), by exhaustive search with
/// sound bound pruning.
int brute_margin(const Instance& inst, const Branching& b, std::uint64_t budget = kDefaultOracleBudget);

std::vector<Branching> brute_popular(const Instance& inst, const OracleOptions& options = {});

struct BruteMargin {
  int margin = 0;
  Branching argmin;
};
BruteMargin brute_min_margin(const Instance& inst, const OracleOptions& options = {});

struct BruteFactor {
  FactorValue factor;
  Branching argmin;
};
/// u(B) by pairwise exhaustion against every branching.
FactorValue brute_factor(const Instance& inst, const Branching& b, std::uint64_t budget = kDefaultOracleBudget);
BruteFactor brute_min_factor(const Instance& inst, const OracleOptions& options = {});

/// Vacuous < finite (by value) < infinite.
bool factor_less(const FactorValue& a, const FactorValue& b);

}  // namespace popbranch

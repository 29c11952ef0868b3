#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "popbranch/instance.hpp"

namespace popbranch {

/// Edge weights of rooted.graph(), indexed by edge.
struct FractionalArborescence {
  std::vector<mpq_class> x;
};

struct MixedComponent {
  Branching arborescence;  // arborescence of rooted.graph()
  mpq_class weight;
};

struct MixedBranching {
  std::vector<MixedComponent> components;
};

FractionalArborescence indicator(const RootedInstance& rooted, const Branching& arborescence);
/// Weighted sum of component indicators.
FractionalArborescence resum(const RootedInstance& rooted, const MixedBranching& mixed);

/// Δ(x,y); throws Error(InfeasiblePoint) unless both points lie in the
/// arborescence polytope.
mpq_class delta_mixed(const RootedInstance& rooted, const FractionalArborescence& x, const FractionalArborescence& y);

struct MembershipResult {
  bool ok = true;
  int degree_node = -1;       // node whose in-degree sum differs from 1
  std::optional<NodeSet> cut;  // X with x(δ⁻(X)) < 1
};

/// In-degree equalities first, then a min r-cut per node.
MembershipResult separate_membership(const RootedInstance& rooted, const FractionalArborescence& x);

struct PopularityResult {
  bool ok = true;
  std::optional<Branching> witness;  // arborescence A with Δ(x,A) < 0
  mpq_class min_delta;               // min over arborescences of Δ(x,A)
};

/// Throws Error(InfeasiblePoint) when in-degree equalities fail and
/// Error(BudgetExceeded) if the scaled costs leave 64-bit range.
PopularityResult separate_popularity(const RootedInstance& rooted, const FractionalArborescence& x);

struct MixedOptions {
  int max_nodes = 12;
  std::size_t max_rounds = 5000;
};

/// Constraint generation over cut rows and arborescence rows. Throws
/// Error(BudgetExceeded) beyond `max_nodes` or `max_rounds`.
MixedBranching popular_mixed_branching(const RootedInstance& rooted, const MixedOptions& options = {});

/// Column generation over arborescences inside the support of x. Throws
/// Error(InfeasiblePoint) if x is not a convex combination of arborescences
/// and Error(SupportTooLarge) when `max_columns` is exceeded.
MixedBranching decompose_fractional(const RootedInstance& rooted, const FractionalArborescence& x,
                                    std::size_t max_columns = 10000);

std::string to_string(const mpq_class& q);

}  // namespace popbranch

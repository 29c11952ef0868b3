#pragma once

#include <optional>
#include <vector>

#include "popbranch/arborescence.hpp"
#include "popbranch/instance.hpp"
#include "popbranch/popularity.hpp"

namespace popbranch {

/// Membership vector over the nodes of rooted.graph().
using NodeMask = std::vector<char>;

NodeMask to_mask(const RootedInstance& rooted, const NodeSet& set);

/// Edges of E[X] undominated inside E[X] that dominate every edge entering X
/// at the same head. Sorted by edge index.
std::vector<int> safe_edges(const RootedInstance& rooted, const NodeSet& set);
std::vector<int> safe_edges(const RootedInstance& rooted, const NodeMask& mask);

/// Fixed point X_v of the shrinking reachability iteration started at V.
NodeSet fixed_point_set(const RootedInstance& rooted, int v);

/// The contracted graph D'.
struct ContractionGraph {
  std::vector<NodeSet> xv;              // X_v per graph node (empty at the root)
  std::vector<NodeSet> supernodes;      // maximal sets, ordered by smallest member
  std::vector<int> super_of;            // graph node -> supernode, -1 at the root
  std::vector<NodeSet> entry_points;    // per supernode: {v : X_v = X}
  std::vector<std::vector<int>> safe;   // per supernode: S(X)
  Digraph dprime;                       // nodes 0..k-1 are supernodes, k is r
  std::vector<int> preimage;            // per D' arc: the original edge

  int root() const { return dprime.root; }
};

ContractionGraph build_contraction(const RootedInstance& rooted);

struct SolverResult {
  Branching arborescence;
  DualCertificate certificate;
  int margin = 0;
};

/// None iff D' has no spanning arborescence from r.
std::optional<SolverResult> popular_arborescence(const RootedInstance& rooted);
std::optional<SolverResult> popular_arborescence(const RootedInstance& rooted, const ContractionGraph& cg);

/// Minimum-margin arborescence; requires weak rankings (Error NotWeakRanking).
SolverResult min_margin_arborescence(const RootedInstance& rooted);

/// BFS arborescence of (X, S(X)) from `entry`, lowest edge index first.
/// Returns parent edges for the members of X other than `entry`.
std::vector<int> inner_arborescence(const RootedInstance& rooted, const ContractionGraph& cg, int super, int entry);

}  // namespace popbranch

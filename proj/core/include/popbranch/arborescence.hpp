#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "popbranch/instance.hpp"

namespace popbranch {

struct Arc {
  int tail = -1;
  int head = -1;
};

/// Plain multi-digraph with a distinguished root. Arc order is the tie-break
/// order of every algorithm in this module.
struct Digraph {
  int num_nodes = 0;
  int root = 0;
  std::vector<Arc> arcs;
};

Digraph to_digraph(const RootedInstance& rooted);

struct CostedGraph {
  Digraph graph;
  std::vector<std::int64_t> cost;  // per arc, >= 0
};

/// Node sets (never containing the root) with positive integer values.
struct LaminarFamily {
  std::vector<NodeSet> sets;
  std::vector<std::int64_t> values;

  std::int64_t total() const;
  std::size_t size() const { return sets.size(); }
};

bool is_laminar(std::span<const NodeSet> sets);

/// Checks, for every arc, that the values of the member sets it enters sum to
/// at most its cost. Returns the index of the first violating arc or -1.
int first_dual_violation(const CostedGraph& g, const LaminarFamily& family);

struct ArborescenceSolution {
  std::vector<int> in_arc;  // per node, -1 at the root
  std::int64_t cost = 0;
  LaminarFamily dual;       // optimal dual, sets sorted, values > 0
};

/// Edmonds contraction with Fulkerson-style dual accumulation. Ties broken by
/// (reduced cost, arc index). Throws Error(Unreachable) if some node cannot be
/// reached from the root and Error(BadInput) on negative costs.
ArborescenceSolution min_cost_arborescence(const CostedGraph& g);

LaminarFamily laminar_dual(const CostedGraph& g);

/// Maximum-cardinality branching: one root per source strongly connected
/// component (its smallest node), then BFS. Returns parent arcs, -1 for roots.
std::vector<int> max_cardinality_branching(const Digraph& g);

/// Strongly connected component id per node (components numbered in reverse
/// topological order of the condensation).
std::vector<int> strongly_connected_components(const Digraph& g, int* count = nullptr);

}  // namespace popbranch

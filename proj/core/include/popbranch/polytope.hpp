#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "popbranch/instance.hpp"
#include "popbranch/lp.hpp"
#include "popbranch/solver.hpp"

namespace popbranch {

struct DStarGraph {
  ContractionGraph contraction;
  std::vector<int> edges;  // sorted edge indices of E_{D*}
};

DStarGraph build_dstar(const RootedInstance& rooted);

/// Throws Error(NotWeakRanking) for general partial orders.
bool is_popular_structural(const RootedInstance& rooted, const Branching& arborescence);
bool is_popular_structural(const RootedInstance& rooted, const DStarGraph& dstar, const Branching& arborescence);

struct CostedArborescence {
  Branching arborescence;
  std::int64_t cost = 0;
};

/// Cheapest popular arborescence; `cost` is indexed by edge of rooted.graph()
/// and may be negative. None when no popular arborescence exists.
std::optional<CostedArborescence> min_cost_popular_branching(const RootedInstance& rooted,
                                                             std::span<const std::int64_t> cost);

// ---------------------------------------------------------------------------
// LP text emission.
// ---------------------------------------------------------------------------

struct LinearTerm {
  std::int64_t coef = 0;
  int var = -1;
};

struct LinearRow {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Eq;
  std::int64_t rhs = 0;
};

/// Constraint rows plus nonnegativity bounds over named variables.
struct LinearSystem {
  std::vector<std::string> comments;
  std::vector<std::string> vars;
  std::vector<LinearRow> rows;
  std::vector<int> nonneg;  // variables bounded below by 0

  std::size_t size() const { return rows.size() + nonneg.size(); }
  int find_var(const std::string& name) const;
  bool satisfied_by(std::span<const std::int64_t> point) const;
  std::string to_text() const;
};

inline constexpr int kDefaultFaceCutoff = 16;

/// Face of the arborescence polytope cut out by the popularity constraints.
/// Exponential in n: Error(TooLarge) when n exceeds `cutoff`.
LinearSystem emit_face_lp(const RootedInstance& rooted, int cutoff = kDefaultFaceCutoff);
/// Flow-based extended formulation over the edges of D*.
LinearSystem emit_extended_lp(const RootedInstance& rooted);

/// Variable names used by both emitters.
std::string edge_var(const RootedInstance& rooted, int e);
std::string flow_var(const RootedInstance& rooted, int e, int v);

}  // namespace popbranch

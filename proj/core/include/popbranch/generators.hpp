#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "popbranch/instance.hpp"
#include "popbranch/popularity.hpp"

namespace popbranch {

// ---------------------------------------------------------------------------
// Random and structured instances.
// ---------------------------------------------------------------------------

struct PrefModel {
  enum class Kind { Strict, Weak, Partial };
  Kind kind = Kind::Strict;
  int max_ties = 2;      // weak: largest tie class
  double density = 0.5;  // partial: probability of each comparable pair

  static PrefModel strict() { return {}; }
  static PrefModel weak(int max_ties) { return {Kind::Weak, max_ties, 0.5}; }
  static PrefModel partial(double density) { return {Kind::Partial, 2, density}; }
};

/// m distinct ordered pairs over n nodes; Error(BadParams) if m > n(n-1).
Instance random_instance(int n, int m, const PrefModel& model, std::uint64_t seed);

/// G_k on 2^k nodes v0..v{2^k-1}; Error(BadParams) for k < 1 or k > 20.
Instance tight_factor_instance(int k);

/// Complete digraph where every in-neighbour is a top choice; BadParams for n < 2.
Instance complete_top_instance(int n);

// ---------------------------------------------------------------------------
// 3-SAT gadget.
// ---------------------------------------------------------------------------

/// Literals are +i / -i for variable i in 1..num_vars.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// DIMACS CNF; Error(Syntax) on malformed text.
Cnf parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf& cnf);

struct SatReduction {
  Cnf formula;
  Instance instance;
};

/// Error(BadFormula) unless every clause has 2 or 3 literals and every
/// variable occurs at most 3 times.
SatReduction reduce_3sat(const Cnf& formula);

/// assignment[i-1] is the value of variable i. Error(Unsatisfied) if some
/// clause has no true literal.
Branching assignment_to_branching(const SatReduction& reduction, const std::vector<bool>& assignment);

/// Planted-assignment formula respecting the gadget's width and occurrence
/// bounds; returns the formula and the planted assignment.
std::pair<Cnf, std::vector<bool>> random_satisfiable_cnf(int num_vars, int num_clauses, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Hamiltonian-path gadget.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kGadgetRoot = "root";
inline constexpr std::string_view kGadgetRootPrime = "root_prime";

struct HamPathReduction {
  Instance source;
  int source_root = -1;
  std::vector<std::vector<int>> in_neighbours;  // n(v,i) of the source, per node
  Instance instance;
};

/// Error(BadInput) unless some node has in-degree 0 and an edge to every
/// other node.
HamPathReduction reduce_hampath(const Instance& source);

/// `path` lists source node ids starting at the root. Error(NotAPath) unless
/// it is a Hamiltonian path of the source.
Branching hampath_to_branching(const HamPathReduction& reduction, const std::vector<std::string>& path);

/// Source digraph with a universal root "s" plus a planted Hamiltonian path
/// and `extra` random edges; returns the graph and the path.
std::pair<Instance, std::vector<std::string>> random_hampath_graph(int n, int extra, std::uint64_t seed);

// ---------------------------------------------------------------------------
// 3-dimensional matching gadget.
// ---------------------------------------------------------------------------

struct TdmInput {
  std::vector<std::string> x, y, z;
  std::vector<std::array<std::string, 3>> triples;
};

/// {"X":[...],"Y":[...],"Z":[...],"T":[[x,y,z],...]}; Error(Syntax).
TdmInput parse_3dm(std::string_view text);

struct TdmReduction {
  TdmInput input;
  RootedInstance rooted;  // explicit root "r"
  bool proof_valid = false;  // |X| > 3
};

/// Error(BadInput) on unequal or overlapping sets, foreign triple elements,
/// or an element covered by no triple.
TdmReduction reduce_3dm(const TdmInput& input);

/// `matching` holds triple indices. Error(BadInput) unless it is a perfect
/// 3D-matching.
std::pair<Branching, DualCertificate> matching_to_certificate(const TdmReduction& reduction,
                                                              const std::vector<int>& matching);

}  // namespace popbranch

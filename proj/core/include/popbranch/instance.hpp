#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace popbranch {

/// Sorted list of node indices.
using NodeSet = std::vector<int>;

// ---------------------------------------------------------------------------
// Document model: what a JSON instance file says, before any validation.
// ---------------------------------------------------------------------------

enum class PrefKind { Weak, Partial };

struct PreferenceSpec {
  PrefKind kind = PrefKind::Partial;
  // Weak ranking: lower rank is better, equal ranks are ties.
  std::map<std::string, long long> ranks;
  // Partial order: (better, worse) pairs; closed transitively on load.
  std::vector<std::pair<std::string, std::string>> dominates;
};

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
};

struct InstanceSpec {
  std::vector<std::string> nodes;
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> preferences;
};

/// Ordered by generality: every strict ranking is a weak ranking, every weak
/// ranking is a partial order.
enum class PreferenceClass { StrictRanking = 0, WeakRanking = 1, PartialOrder = 2 };

std::string_view preference_class_name(PreferenceClass c) noexcept;

struct ValidationReport {
  std::vector<std::string> violations;
  PreferenceClass classification = PreferenceClass::StrictRanking;
  std::map<std::string, PreferenceClass> per_node;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks every structural and preference invariant of a document. Never
/// throws; the classification is only meaningful when `ok()`.
ValidationReport validate(const InstanceSpec& spec);

// ---------------------------------------------------------------------------
// Validated, indexed instance.
// ---------------------------------------------------------------------------

struct Edge {
  std::string id;
  int tail = -1;
  int head = -1;
};

/// Outcome of asking node v which of two incoming edges it prefers.
enum class Preference { First, Second, Neither };

/// Immutable preference-labeled multi-digraph.
///
/// Nodes are kept in lexicographic id order and edges in lexicographic id
/// order (root augmentation appends its root node and root edges at the end).
/// Every node stores the transitively closed strict dominance relation over
/// its incoming edges as bitsets indexed by position in `in_edges(v)`.
class Instance {
 public:
  Instance() = default;

  /// Validates and indexes a document. Throws Error(Semantic) listing every
  /// violation found by `validate`.
  static Instance from_spec(const InstanceSpec& spec);

  int num_nodes() const noexcept { return static_cast<int>(nodes_.size()); }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  const std::string& node_id(int v) const { return nodes_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::string& edge_id(int e) const { return edges_[e].id; }
  int tail(int e) const { return edges_[e].tail; }
  int head(int e) const { return edges_[e].head; }

  std::optional<int> find_node(std::string_view id) const;
  std::optional<int> find_edge(std::string_view id) const;

  std::span<const int> in_edges(int v) const { return in_[v]; }
  std::span<const int> out_edges(int v) const { return out_[v]; }
  /// Position of `e` inside `in_edges(head(e))`.
  int position(int e) const { return pos_[e]; }

  /// True iff head(e) == head(f) and e is strictly preferred to f.
  bool prefers(int e, int f) const;
  /// Throws Error(WrongHead) unless both edges enter v.
  Preference compare(int v, int e, int f) const;

  /// Bitset over positions of in_edges(head(e)): edges strictly worse than e.
  std::span<const std::uint64_t> beats(int e) const {
    return {bits_.data() + beats_at_[e], words(head(e))};
  }
  /// Bitset over positions of in_edges(head(e)): edges strictly better than e.
  std::span<const std::uint64_t> beaten_by(int e) const {
    return {bits_.data() + beaten_at_[e], words(head(e))};
  }
  std::size_t words(int v) const { return (in_[v].size() + 63) / 64; }

  PreferenceClass node_class(int v) const { return node_class_[v]; }
  PreferenceClass classification() const noexcept { return classification_; }

  /// Canonical document: ranks kept as given, partial orders emitted closed.
  InstanceSpec to_spec() const;

  bool operator==(const Instance& other) const;

 private:
  friend class RootedInstance;
  friend Instance assemble_instance(std::vector<std::string> nodes, std::vector<EdgeSpec> edges,
                                    std::map<std::string, PreferenceSpec> prefs);

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, int, std::less<>> node_index_;
  std::map<std::string, int, std::less<>> edge_index_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
  std::vector<int> pos_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::size_t> beats_at_;
  std::vector<std::size_t> beaten_at_;
  std::vector<PrefKind> kind_;
  std::vector<std::vector<long long>> rank_;  // per node, by position (weak only)
  std::vector<PreferenceClass> node_class_;
  PreferenceClass classification_ = PreferenceClass::StrictRanking;
};

/// Builds an instance from already-valid parts without reordering them.
Instance assemble_instance(std::vector<std::string> nodes, std::vector<EdgeSpec> edges,
                           std::map<std::string, PreferenceSpec> prefs);

ValidationReport validate(const Instance& inst);

/// Throws Error(Syntax) on malformed JSON or schema shape, Error(Semantic) on
/// invariant violations.
InstanceSpec parse_instance_spec(std::string_view text);
Instance parse_instance(std::string_view text);
/// Keys sorted; round-trips through `parse_instance`.
std::string serialize_instance(const Instance& inst);

// ---------------------------------------------------------------------------
// Root augmentation.
// ---------------------------------------------------------------------------

inline constexpr std::string_view kRootId = "r";

/// The graph D: base instance plus a root with in-degree 0 and an edge to
/// every node. Built either by `augment_root` (root edges least preferred) or
/// from a document that already contains its root (`with_explicit_root`).
class RootedInstance {
 public:
  RootedInstance() = default;

  /// Uses an existing in-degree-0 node as the root. Every other node must
  /// have at least one edge from it. Throws Error(BadInput) otherwise.
  static RootedInstance with_explicit_root(Instance graph, std::string_view root_id);

  const Instance& graph() const noexcept { return *graph_; }
  const Instance& base() const noexcept { return *base_; }
  int root() const noexcept { return root_; }
  /// n = |V|, the number of voters (all nodes except the root).
  int num_voters() const noexcept { return graph_->num_nodes() - 1; }
  bool is_root_edge(int e) const { return graph_->tail(e) == root_; }
  /// Nodes of V in index order.
  std::vector<int> voters() const;
  /// True when built by augment_root: base indices equal graph indices.
  bool augmented() const noexcept { return augmented_; }
  /// Some root edge into v (the unique one for augmented instances).
  int root_edge(int v) const { return root_edge_[v]; }

 private:
  friend RootedInstance augment_root(const Instance& inst);

  std::shared_ptr<const Instance> graph_;
  std::shared_ptr<const Instance> base_;
  int root_ = -1;
  bool augmented_ = false;
  std::vector<int> root_edge_;
};

/// Adds node "r" and one edge "(r,v)" per node, each strictly dominated by
/// every other edge into v. Throws Error(IdClash) if an id is taken.
RootedInstance augment_root(const Instance& inst);

// ---------------------------------------------------------------------------
// Branchings.
// ---------------------------------------------------------------------------

/// Parent-edge map; -1 marks a root. An arborescence of a RootedInstance is a
/// branching of its graph where only the root has no parent and everything is
/// reachable from it.
struct Branching {
  std::vector<int> in_edge;

  std::vector<int> edges() const;
  bool operator==(const Branching&) const = default;
};

bool is_branching(const Instance& inst, const Branching& b);
bool is_arborescence(const RootedInstance& rooted, const Branching& a);

/// Builds a branching from an edge list; throws Error(BadInput) if two edges
/// share a head or the result has a cycle.
Branching branching_from_edges(const Instance& inst, std::span<const int> edges);
Branching branching_from_ids(const Instance& inst, std::span<const std::string> ids);
std::vector<std::string> edge_ids(const Instance& inst, const Branching& b);

/// Drops root edges: an arborescence of D becomes a branching of the base.
Branching project(const RootedInstance& rooted, const Branching& arborescence);
/// Hangs every base root under r.
Branching lift(const RootedInstance& rooted, const Branching& branching);

/// Descendant counts (excluding the node itself) and out-degrees.
std::vector<int> descendant_counts(const Instance& inst, const Branching& b);
std::vector<int> out_degrees(const Instance& inst, const Branching& b);

}  // namespace popbranch

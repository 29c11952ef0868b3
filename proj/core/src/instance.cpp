#include "popbranch/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

using json = nlohmann::json;

// Dense strict-dominance matrix over one node's incoming edges.
struct Relation {
  int d = 0;
  std::vector<char> a;
  explicit Relation(int size) : d(size), a(static_cast<std::size_t>(size) * size, 0) {}
  char& at(int i, int j) { return a[static_cast<std::size_t>(i) * d + j]; }
  char at(int i, int j) const { return a[static_cast<std::size_t>(i) * d + j]; }

  void close() {
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        if (at(i, k))
          for (int j = 0; j < d; ++j)
            if (at(k, j)) at(i, j) = 1;
  }
  bool cyclic() const {
    for (int i = 0; i < d; ++i)
      if (at(i, i)) return true;
    return false;
  }
  bool comparable(int i, int j) const { return at(i, j) || at(j, i); }

  PreferenceClass classify() const {
    bool strict = true;
    for (int i = 0; i < d && strict; ++i)
      for (int j = i + 1; j < d; ++j)
        if (!comparable(i, j)) {
          strict = false;
          break;
        }
    if (strict) return PreferenceClass::StrictRanking;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        if (i == j || comparable(i, j)) continue;
        for (int k = 0; k < d; ++k)
          if (k != i && k != j && !comparable(j, k) && comparable(i, k))
            return PreferenceClass::PartialOrder;
      }
    return PreferenceClass::WeakRanking;
  }
};

// Builds the closed relation for one node; `local` maps edge id -> position.
Relation build_relation(const PreferenceSpec* pref, const std::map<std::string, int>& local) {
  Relation rel(static_cast<int>(local.size()));
  if (pref == nullptr) return rel;
  if (pref->kind == PrefKind::Weak) {
    std::vector<long long> rank(local.size(), 0);
    for (const auto& [id, pos] : local) {
      auto it = pref->ranks.find(id);
      rank[pos] = it == pref->ranks.end() ? 0 : it->second;
    }
    for (int i = 0; i < rel.d; ++i)
      for (int j = 0; j < rel.d; ++j)
        if (rank[i] < rank[j]) rel.at(i, j) = 1;
    return rel;
  }
  for (const auto& [better, worse] : pref->dominates) {
    auto b = local.find(better);
    auto w = local.find(worse);
    if (b != local.end() && w != local.end()) rel.at(b->second, w->second) = 1;
  }
  rel.close();
  return rel;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& s : ids) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

std::string_view preference_class_name(PreferenceClass c) noexcept {
  switch (c) {
    case PreferenceClass::StrictRanking: return "strict ranking";
    case PreferenceClass::WeakRanking: return "weak ranking";
    case PreferenceClass::PartialOrder: return "partial order";
  }
  return "partial order";
}

ValidationReport validate(const InstanceSpec& spec) {
  ValidationReport report;
  auto& v = report.violations;

  std::set<std::string> nodes;
  for (const auto& id : spec.nodes) {
    if (id.empty()) v.push_back("empty node id");
    if (!nodes.insert(id).second) v.push_back("duplicate node id: " + id);
  }

  std::map<std::string, std::map<std::string, int>> incoming;  // head -> edge id -> pos
  std::set<std::string> edge_ids;
  for (const auto& e : spec.edges) {
    if (e.id.empty()) v.push_back("empty edge id");
    if (!edge_ids.insert(e.id).second) {
      v.push_back("duplicate edge id: " + e.id);
      continue;
    }
    bool ok = true;
    if (!nodes.count(e.tail)) {
      v.push_back("dangling edge endpoint: edge " + e.id + " tail " + e.tail);
      ok = false;
    }
    if (!nodes.count(e.head)) {
      v.push_back("dangling edge endpoint: edge " + e.id + " head " + e.head);
      ok = false;
    }
    if (ok && e.tail == e.head) {
      v.push_back("self-loop: edge " + e.id + " at " + e.head);
      ok = false;
    }
    if (ok) {
      auto& local = incoming[e.head];
      local.emplace(e.id, static_cast<int>(local.size()));
    }
  }

  for (const auto& [node, pref] : spec.preferences) {
    if (!nodes.count(node)) {
      v.push_back("preferences for undeclared node: " + node);
      continue;
    }
    const auto& local = incoming[node];
    if (pref.kind == PrefKind::Weak) {
      for (const auto& [eid, rank] : pref.ranks) {
        if (!local.count(eid)) v.push_back("rank for non-incoming edge: node " + node + " edge " + eid);
        if (rank < 1) v.push_back("non-positive rank: node " + node + " edge " + eid);
      }
      for (const auto& [eid, pos] : local)
        if (!pref.ranks.count(eid)) v.push_back("unranked incoming edge: node " + node + " edge " + eid);
    } else {
      for (const auto& [better, worse] : pref.dominates) {
        if (!local.count(better))
          v.push_back("dominance pair with non-incoming edge: node " + node + " edge " + better);
        if (!local.count(worse))
          v.push_back("dominance pair with non-incoming edge: node " + node + " edge " + worse);
      }
    }
  }

  for (const auto& node : nodes) {
    const auto& local = incoming[node];
    auto it = spec.preferences.find(node);
    Relation rel = build_relation(it == spec.preferences.end() ? nullptr : &it->second, local);
    if (rel.cyclic()) {
      std::vector<std::string> cyc;
      for (const auto& [eid, pos] : local)
        if (rel.at(pos, pos)) cyc.push_back(eid);
      v.push_back("cyclic dominance: node " + node + " edges " + join_ids(cyc));
      report.per_node[node] = PreferenceClass::PartialOrder;
      continue;
    }
    PreferenceClass c = rel.classify();
    report.per_node[node] = c;
    report.classification = std::max(report.classification, c);
  }
  if (!report.ok()) report.classification = PreferenceClass::PartialOrder;
  return report;
}

Instance assemble_instance(std::vector<std::string> nodes, std::vector<EdgeSpec> edges,
                           std::map<std::string, PreferenceSpec> prefs) {
  Instance inst;
  const int n = static_cast<int>(nodes.size());
  inst.nodes_ = std::move(nodes);
  for (int i = 0; i < n; ++i) inst.node_index_.emplace(inst.nodes_[i], i);
  inst.in_.assign(n, {});
  inst.out_.assign(n, {});
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge e{edges[k].id, inst.node_index_.at(edges[k].tail), inst.node_index_.at(edges[k].head)};
    inst.edge_index_.emplace(e.id, static_cast<int>(k));
    inst.in_[e.head].push_back(static_cast<int>(k));
    inst.out_[e.tail].push_back(static_cast<int>(k));
    inst.edges_.push_back(std::move(e));
  }
  const int m = inst.num_edges();
  inst.pos_.assign(m, 0);
  inst.beats_at_.assign(m, 0);
  inst.beaten_at_.assign(m, 0);
  inst.kind_.assign(n, PrefKind::Partial);
  inst.rank_.assign(n, {});
  inst.node_class_.assign(n, PreferenceClass::StrictRanking);
  inst.classification_ = PreferenceClass::StrictRanking;

  for (int v = 0; v < n; ++v) {
    const auto& in = inst.in_[v];
    std::map<std::string, int> local;
    for (std::size_t p = 0; p < in.size(); ++p) {
      inst.pos_[in[p]] = static_cast<int>(p);
      local.emplace(inst.edges_[in[p]].id, static_cast<int>(p));
    }
    auto it = prefs.find(inst.nodes_[v]);
    const PreferenceSpec* pref = it == prefs.end() ? nullptr : &it->second;
    Relation rel = build_relation(pref, local);
    if (pref != nullptr && pref->kind == PrefKind::Weak) {
      inst.kind_[v] = PrefKind::Weak;
      inst.rank_[v].resize(in.size());
      for (std::size_t p = 0; p < in.size(); ++p) inst.rank_[v][p] = pref->ranks.at(inst.edges_[in[p]].id);
    }
    inst.node_class_[v] = rel.classify();
    inst.classification_ = std::max(inst.classification_, inst.node_class_[v]);

    const std::size_t w = inst.words(v);
    for (std::size_t p = 0; p < in.size(); ++p) {
      const int e = in[p];
      inst.beats_at_[e] = inst.bits_.size();
      inst.bits_.resize(inst.bits_.size() + w, 0);
      inst.beaten_at_[e] = inst.bits_.size();
      inst.bits_.resize(inst.bits_.size() + w, 0);
    }
    for (int i = 0; i < rel.d; ++i)
      for (int j = 0; j < rel.d; ++j)
        if (rel.at(i, j)) {
          inst.bits_[inst.beats_at_[in[i]] + j / 64] |= std::uint64_t{1} << (j % 64);
          inst.bits_[inst.beaten_at_[in[j]] + i / 64] |= std::uint64_t{1} << (i % 64);
        }
  }
  return inst;
}

Instance Instance::from_spec(const InstanceSpec& spec) {
  ValidationReport report = validate(spec);
  if (!report.ok()) {
    std::string msg;
    for (const auto& s : report.violations) {
      if (!msg.empty()) msg += "; ";
      msg += s;
    }
    throw Error(Errc::Semantic, msg);
  }
  std::vector<std::string> nodes = spec.nodes;
  std::sort(nodes.begin(), nodes.end());
  std::vector<EdgeSpec> edges = spec.edges;
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  return assemble_instance(std::move(nodes), std::move(edges), spec.preferences);
}

std::optional<int> Instance::find_node(std::string_view id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::find_edge(std::string_view id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

bool Instance::prefers(int e, int f) const {
  if (head(e) != head(f)) return false;
  const int p = pos_[f];
  return (bits_[beats_at_[e] + p / 64] >> (p % 64)) & 1U;
}

Preference Instance::compare(int v, int e, int f) const {
  if (e < 0 || f < 0 || e >= num_edges() || f >= num_edges() || head(e) != v || head(f) != v)
    throw Error(Errc::WrongHead, "edges must both enter " + (v >= 0 && v < num_nodes() ? nodes_[v] : std::string("?")));
  if (prefers(e, f)) return Preference::First;
  if (prefers(f, e)) return Preference::Second;
  return Preference::Neither;
}

InstanceSpec Instance::to_spec() const {
  InstanceSpec spec;
  spec.nodes = nodes_;
  for (const auto& e : edges_) spec.edges.push_back({e.id, nodes_[e.tail], nodes_[e.head]});
  for (int v = 0; v < num_nodes(); ++v) {
    PreferenceSpec pref;
    pref.kind = kind_[v];
    const auto& in = in_[v];
    if (kind_[v] == PrefKind::Weak) {
      for (std::size_t p = 0; p < in.size(); ++p) pref.ranks.emplace(edges_[in[p]].id, rank_[v][p]);
    } else {
      for (int e : in)
        for (int f : in)
          if (prefers(e, f)) pref.dominates.emplace_back(edges_[e].id, edges_[f].id);
      std::sort(pref.dominates.begin(), pref.dominates.end());
    }
    spec.preferences.emplace(nodes_[v], std::move(pref));
  }
  return spec;
}

bool Instance::operator==(const Instance& other) const {
  if (nodes_ != other.nodes_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t k = 0; k < edges_.size(); ++k)
    if (edges_[k].id != other.edges_[k].id || edges_[k].tail != other.edges_[k].tail ||
        edges_[k].head != other.edges_[k].head)
      return false;
  return kind_ == other.kind_ && rank_ == other.rank_ && bits_ == other.bits_;
}

ValidationReport validate(const Instance& inst) { return validate(inst.to_spec()); }

InstanceSpec parse_instance_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::Syntax, e.what());
  }
  auto fail = [](const std::string& what) { throw Error(Errc::Syntax, what); };
  if (!doc.is_object()) fail("document must be an object");
  InstanceSpec spec;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) fail("\"nodes\" must be an array");
  for (const auto& n : doc["nodes"]) {
    if (!n.is_string()) fail("node ids must be strings");
    spec.nodes.push_back(n.get<std::string>());
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) fail("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_object()) fail("edges must be objects");
      for (const char* key : {"id", "tail", "head"})
        if (!e.contains(key) || !e[key].is_string()) fail(std::string("edge field \"") + key + "\" must be a string");
      spec.edges.push_back({e["id"].get<std::string>(), e["tail"].get<std::string>(), e["head"].get<std::string>()});
    }
  }
  if (doc.contains("preferences")) {
    if (!doc["preferences"].is_object()) fail("\"preferences\" must be an object");
    for (const auto& [node, p] : doc["preferences"].items()) {
      if (!p.is_object() || !p.contains("kind") || !p["kind"].is_string()) fail("preference of " + node + " needs a kind");
      PreferenceSpec pref;
      const std::string kind = p["kind"].get<std::string>();
      if (kind == "weak") {
        pref.kind = PrefKind::Weak;
        if (p.contains("ranks")) {
          if (!p["ranks"].is_object()) fail("ranks of " + node + " must be an object");
          for (const auto& [eid, r] : p["ranks"].items()) {
            if (!r.is_number_integer()) fail("rank of " + eid + " must be an integer");
            pref.ranks.emplace(eid, r.get<long long>());
          }
        }
      } else if (kind == "partial") {
        pref.kind = PrefKind::Partial;
        if (p.contains("dominates")) {
          if (!p["dominates"].is_array()) fail("dominates of " + node + " must be an array");
          for (const auto& pair : p["dominates"]) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
              fail("dominance pairs must be [better, worse] string pairs");
            pref.dominates.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
          }
        }
      } else {
        fail("unknown preference kind: " + kind);
      }
      spec.preferences.emplace(node, std::move(pref));
    }
  }
  return spec;
}

Instance parse_instance(std::string_view text) { return Instance::from_spec(parse_instance_spec(text)); }

std::string serialize_instance(const Instance& inst) {
  InstanceSpec spec = inst.to_spec();
  json doc = json::object();
  doc["nodes"] = spec.nodes;
  json edges = json::array();
  for (const auto& e : spec.edges) edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  doc["edges"] = std::move(edges);
  json prefs = json::object();
  for (const auto& [node, p] : spec.preferences) {
    if (p.kind == PrefKind::Weak) {
      json ranks = json::object();
      for (const auto& [eid, r] : p.ranks) ranks[eid] = r;
      prefs[node] = {{"kind", "weak"}, {"ranks", std::move(ranks)}};
    } else {
      json dom = json::array();
      for (const auto& [b, w] : p.dominates) dom.push_back({b, w});
      prefs[node] = {{"kind", "partial"}, {"dominates", std::move(dom)}};
    }
  }
  doc["preferences"] = std::move(prefs);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

RootedInstance augment_root(const Instance& inst) {
  if (inst.find_node(kRootId)) throw Error(Errc::IdClash, "node id \"r\" already exists");
  InstanceSpec spec = inst.to_spec();
  const int n = inst.num_nodes();
  std::vector<std::string> nodes = spec.nodes;
  nodes.emplace_back(kRootId);
  std::vector<EdgeSpec> edges = spec.edges;
  for (int v = 0; v < n; ++v) {
    std::string id = "(r," + inst.node_id(v) + ")";
    if (inst.find_edge(id)) throw Error(Errc::IdClash, "edge id " + id + " already exists");
    edges.push_back({id, std::string(kRootId), inst.node_id(v)});
    auto& pref = spec.preferences[inst.node_id(v)];
    if (pref.kind == PrefKind::Weak) {
      long long worst = 0;
      for (const auto& [eid, r] : pref.ranks) worst = std::max(worst, r);
      pref.ranks.emplace(id, worst + 1);
    } else {
      for (int e : inst.in_edges(v)) pref.dominates.emplace_back(inst.edge_id(e), id);
    }
  }
  RootedInstance out;
  out.base_ = std::make_shared<const Instance>(inst);
  out.graph_ = std::make_shared<const Instance>(
      assemble_instance(std::move(nodes), std::move(edges), std::move(spec.preferences)));
  out.root_ = n;
  out.augmented_ = true;
  out.root_edge_.assign(n + 1, -1);
  for (int v = 0; v < n; ++v) out.root_edge_[v] = inst.num_edges() + v;
  return out;
}

RootedInstance RootedInstance::with_explicit_root(Instance graph, std::string_view root_id) {
  auto root = graph.find_node(root_id);
  if (!root) throw Error(Errc::BadInput, "root node " + std::string(root_id) + " not found");
  if (!graph.in_edges(*root).empty()) throw Error(Errc::BadInput, "root must have in-degree 0");
  RootedInstance out;
  out.root_ = *root;
  out.root_edge_.assign(graph.num_nodes(), -1);
  for (int v = 0; v < graph.num_nodes(); ++v) {
    if (v == *root) continue;
    for (int e : graph.in_edges(v))
      if (graph.tail(e) == *root) {
        out.root_edge_[v] = e;
        break;
      }
    if (out.root_edge_[v] < 0) throw Error(Errc::BadInput, "no root edge into " + graph.node_id(v));
  }
  out.graph_ = std::make_shared<const Instance>(std::move(graph));
  out.base_ = out.graph_;
  out.augmented_ = false;
  return out;
}

std::vector<int> RootedInstance::voters() const {
  std::vector<int> out;
  for (int v = 0; v < graph_->num_nodes(); ++v)
    if (v != root_) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<int> Branching::edges() const {
  std::vector<int> out;
  for (int e : in_edge)
    if (e >= 0) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool acyclic(const Instance& inst, const Branching& b) {
  const int n = inst.num_nodes();
  std::vector<char> state(n, 0);  // 0 new, 1 on current walk, 2 done
  for (int s = 0; s < n; ++s) {
    if (state[s]) continue;
    std::vector<int> walk;
    int v = s;
    while (v >= 0 && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = b.in_edge[v] >= 0 ? inst.tail(b.in_edge[v]) : -1;
    }
    if (v >= 0 && state[v] == 1) return false;
    for (int w : walk) state[w] = 2;
  }
  return true;
}

}  // namespace

bool is_branching(const Instance& inst, const Branching& b) {
  if (static_cast<int>(b.in_edge.size()) != inst.num_nodes()) return false;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const int e = b.in_edge[v];
    if (e == -1) continue;
    if (e < 0 || e >= inst.num_edges() || inst.head(e) != v) return false;
  }
  return acyclic(inst, b);
}

bool is_arborescence(const RootedInstance& rooted, const Branching& a) {
  if (!is_branching(rooted.graph(), a)) return false;
  for (int v = 0; v < rooted.graph().num_nodes(); ++v)
    if ((a.in_edge[v] < 0) != (v == rooted.root())) return false;
  return true;
}

Branching branching_from_edges(const Instance& inst, std::span<const int> edges) {
  Branching b{std::vector<int>(inst.num_nodes(), -1)};
  for (int e : edges) {
    if (e < 0 || e >= inst.num_edges()) throw Error(Errc::BadInput, "edge index out of range");
    int& slot = b.in_edge[inst.head(e)];
    if (slot >= 0 && slot != e)
      throw Error(Errc::BadInput, "two edges enter " + inst.node_id(inst.head(e)));
    slot = e;
  }
  if (!acyclic(inst, b)) throw Error(Errc::BadInput, "edge set contains a cycle");
  return b;
}

Branching branching_from_ids(const Instance& inst, std::span<const std::string> ids) {
  std::vector<int> edges;
  for (const auto& id : ids) {
    auto e = inst.find_edge(id);
    if (!e) throw Error(Errc::BadInput, "unknown edge id " + id);
    edges.push_back(*e);
  }
  return branching_from_edges(inst, edges);
}

std::vector<std::string> edge_ids(const Instance& inst, const Branching& b) {
  std::vector<std::string> out;
  for (int e : b.edges()) out.push_back(inst.edge_id(e));
  std::sort(out.begin(), out.end());
  return out;
}

Branching project(const RootedInstance& rooted, const Branching& arborescence) {
  const int n = rooted.base().num_nodes();
  Branching b{std::vector<int>(n, -1)};
  for (int v = 0; v < n; ++v) {
    const int e = arborescence.in_edge[v];
    if (e >= 0 && !rooted.is_root_edge(e)) b.in_edge[v] = e;
  }
  return b;
}

Branching lift(const RootedInstance& rooted, const Branching& branching) {
  const int total = rooted.graph().num_nodes();
  Branching a{std::vector<int>(total, -1)};
  for (int v = 0; v < total; ++v) {
    if (v == rooted.root()) continue;
    const int e = v < static_cast<int>(branching.in_edge.size()) ? branching.in_edge[v] : -1;
    a.in_edge[v] = e >= 0 ? e : rooted.root_edge(v);
  }
  return a;
}

std::vector<int> out_degrees(const Instance& inst, const Branching& b) {
  std::vector<int> deg(inst.num_nodes(), 0);
  for (int e : b.in_edge)
    if (e >= 0) ++deg[inst.tail(e)];
  return deg;
}

std::vector<int> descendant_counts(const Instance& inst, const Branching& b) {
  const int n = inst.num_nodes();
  std::vector<std::vector<int>> children(n);
  std::vector<int> roots;
  for (int v = 0; v < n; ++v) {
    if (b.in_edge[v] >= 0)
      children[inst.tail(b.in_edge[v])].push_back(v);
    else
      roots.push_back(v);
  }
  std::vector<int> order;
  for (int r : roots) {
    std::vector<int> stack{r};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int c : children[v]) stack.push_back(c);
    }
  }
  std::vector<int> count(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int c : children[*it]) count[*it] += count[c] + 1;
  return count;
}

}  // namespace popbranch

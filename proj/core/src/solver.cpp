#include "popbranch/solver.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, int i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

bool disjoint(std::span<const std::uint64_t> a, const Bits& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (a[i] & b[i]) return false;
  return true;
}

bool covers(std::span<const std::uint64_t> a, const Bits& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] & ~a[i]) return false;
  return true;
}

// Positions of v's incoming edges whose tail lies inside / outside the mask.
void split_incoming(const Instance& g, int v, const NodeMask& mask, Bits& inside, Bits& outside) {
  const std::size_t w = g.words(v);
  inside.assign(w, 0);
  outside.assign(w, 0);
  const auto in = g.in_edges(v);
  for (std::size_t p = 0; p < in.size(); ++p) {
    if (mask[g.tail(in[p])]) set_bit(inside, static_cast<int>(p));
    else set_bit(outside, static_cast<int>(p));
  }
}

NodeSet reach_within(const Instance& g, int source, const std::vector<int>& edges) {
  std::map<int, std::vector<int>> out;
  for (int e : edges) out[g.tail(e)].push_back(g.head(e));
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  NodeSet result;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    result.push_back(v);
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (int w : it->second)
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  std::sort(result.begin(), result.end());
  return result;
}

NodeSet fixed_point(const RootedInstance& rooted, int v, const std::vector<int>& safe_all) {
  NodeSet current = rooted.voters();
  const std::vector<int>* safe = &safe_all;
  std::vector<int> scratch;
  while (true) {
    NodeSet next = reach_within(rooted.graph(), v, *safe);
    if (next.size() == current.size()) return current;
    current = std::move(next);
    scratch = safe_edges(rooted, current);
    safe = &scratch;
  }
}

}  // namespace

NodeMask to_mask(const RootedInstance& rooted, const NodeSet& set) {
  NodeMask mask(rooted.graph().num_nodes(), 0);
  for (int v : set) mask[v] = 1;
  return mask;
}

std::vector<int> safe_edges(const RootedInstance& rooted, const NodeSet& set) {
  return safe_edges(rooted, to_mask(rooted, set));
}

std::vector<int> safe_edges(const RootedInstance& rooted, const NodeMask& mask) {
  const Instance& g = rooted.graph();
  std::vector<int> out;
  Bits inside, outside;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!mask[v] || v == rooted.root()) continue;
    split_incoming(g, v, mask, inside, outside);
    for (int e : g.in_edges(v)) {
      if (!mask[g.tail(e)]) continue;
      if (disjoint(g.beaten_by(e), inside) && covers(g.beats(e), outside)) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeSet fixed_point_set(const RootedInstance& rooted, int v) {
  return fixed_point(rooted, v, safe_edges(rooted, rooted.voters()));
}

ContractionGraph build_contraction(const RootedInstance& rooted) {
  const Instance& g = rooted.graph();
  const int total = g.num_nodes();
  ContractionGraph cg;
  cg.xv.assign(total, {});
  const std::vector<int> safe_all = safe_edges(rooted, rooted.voters());
  for (int v : rooted.voters()) cg.xv[v] = fixed_point(rooted, v, safe_all);

  // Laminar family: larger sets first; a set is maximal iff its members are
  // still unassigned when it is reached.
  std::vector<int> order = rooted.voters();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return cg.xv[a].size() > cg.xv[b].size(); });
  std::vector<int> owner(total, -1);
  std::vector<NodeSet> maximal;
  for (int v : order) {
    if (owner[cg.xv[v].front()] >= 0) continue;
    for (int w : cg.xv[v]) owner[w] = static_cast<int>(maximal.size());
    maximal.push_back(cg.xv[v]);
  }
  std::sort(maximal.begin(), maximal.end(), [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  const int k = static_cast<int>(maximal.size());
  cg.supernodes = maximal;
  cg.super_of.assign(total, -1);
  for (int s = 0; s < k; ++s)
    for (int v : cg.supernodes[s]) cg.super_of[v] = s;
  cg.entry_points.assign(k, {});
  for (int v : rooted.voters())
    if (cg.xv[v] == cg.supernodes[cg.super_of[v]]) cg.entry_points[cg.super_of[v]].push_back(v);
  cg.safe.resize(k);
  for (int s = 0; s < k; ++s) cg.safe[s] = cg.supernodes[s].size() >= 2 ? safe_edges(rooted, cg.supernodes[s]) : std::vector<int>{};

  cg.dprime.num_nodes = k + 1;
  cg.dprime.root = k;
  Bits inside, outside;
  for (int s = 0; s < k; ++s) {
    const NodeMask mask = to_mask(rooted, cg.supernodes[s]);
    for (int v : cg.entry_points[s]) {
      split_incoming(g, v, mask, inside, outside);
      for (int e : g.in_edges(v)) {
        const int u = g.tail(e);
        if (mask[u]) continue;
        if (!disjoint(g.beaten_by(e), outside)) continue;
        cg.dprime.arcs.push_back({u == rooted.root() ? k : cg.super_of[u], s});
        cg.preimage.push_back(e);
      }
    }
  }
  // Arc order follows preimage edge order.
  std::vector<int> idx(cg.preimage.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return cg.preimage[a] < cg.preimage[b]; });
  std::vector<Arc> arcs;
  std::vector<int> pre;
  for (int i : idx) {
    arcs.push_back(cg.dprime.arcs[i]);
    pre.push_back(cg.preimage[i]);
  }
  cg.dprime.arcs = std::move(arcs);
  cg.preimage = std::move(pre);
  return cg;
}

std::vector<int> inner_arborescence(const RootedInstance& rooted, const ContractionGraph& cg, int super, int entry) {
  const Instance& g = rooted.graph();
  std::map<int, std::vector<int>> out;
  for (int e : cg.safe[super]) out[g.tail(e)].push_back(e);
  std::map<int, int> parent;
  std::deque<int> queue{entry};
  std::vector<char> seen(g.num_nodes(), 0);
  seen[entry] = 1;
  std::vector<int> edges;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    auto it = out.find(v);
    if (it == out.end()) continue;
    for (int e : it->second) {
      const int w = g.head(e);
      if (seen[w]) continue;
      seen[w] = 1;
      edges.push_back(e);
      queue.push_back(w);
    }
  }
  if (edges.size() + 1 != cg.supernodes[super].size())
    throw std::logic_error("entry point does not reach its set through safe edges");
  return edges;
}

namespace {

// Expands an arborescence of D' (one entering preimage edge per supernode) or
// a root choice per supernode into an arborescence of D.
Branching expand(const RootedInstance& rooted, const ContractionGraph& cg, const std::vector<int>& entry_edge) {
  Branching a{std::vector<int>(rooted.graph().num_nodes(), -1)};
  for (std::size_t s = 0; s < cg.supernodes.size(); ++s) {
    const int e = entry_edge[s];
    const int v = rooted.graph().head(e);
    a.in_edge[v] = e;
    for (int f : inner_arborescence(rooted, cg, static_cast<int>(s), v)) a.in_edge[rooted.graph().head(f)] = f;
  }
  return a;
}

}  // namespace

std::optional<SolverResult> popular_arborescence(const RootedInstance& rooted) {
  return popular_arborescence(rooted, build_contraction(rooted));
}

std::optional<SolverResult> popular_arborescence(const RootedInstance& rooted, const ContractionGraph& cg) {
  const Digraph& d = cg.dprime;
  const int k = d.num_nodes - 1;
  std::vector<std::vector<int>> out(d.num_nodes);
  for (int a = 0; a < static_cast<int>(d.arcs.size()); ++a) out[d.arcs[a].tail].push_back(a);
  std::vector<int> parent(d.num_nodes, -1);
  std::vector<char> seen(d.num_nodes, 0);
  std::deque<int> queue{d.root};
  seen[d.root] = 1;
  int reached = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int a : out[x]) {
      const int y = d.arcs[a].head;
      if (seen[y]) continue;
      seen[y] = 1;
      parent[y] = a;
      ++reached;
      queue.push_back(y);
    }
  }
  if (reached != d.num_nodes) return std::nullopt;

  std::vector<int> entry_edge(k);
  for (int s = 0; s < k; ++s) entry_edge[s] = cg.preimage[parent[s]];
  SolverResult res;
  res.arborescence = expand(rooted, cg, entry_edge);
  std::vector<char> in_r(rooted.graph().num_nodes(), 0);
  for (int e : entry_edge) {
    const int v = rooted.graph().head(e);
    if (cg.xv[v].size() >= 2) {
      in_r[v] = 1;
      res.certificate.push_back(cg.xv[v]);
    }
  }
  for (int v : rooted.voters())
    if (!in_r[v]) res.certificate.push_back({v});
  res.certificate = normalize(std::move(res.certificate));
  res.margin = 0;
  return res;
}

SolverResult min_margin_arborescence(const RootedInstance& rooted) {
  if (rooted.graph().classification() == PreferenceClass::PartialOrder)
    throw Error(Errc::NotWeakRanking, "minimum margin needs weak rankings at every node");
  const ContractionGraph cg = build_contraction(rooted);
  const int k = cg.dprime.num_nodes - 1;
  const std::vector<int> parent = max_cardinality_branching(cg.dprime);

  std::vector<int> entry_edge(k);
  std::vector<char> in_r1(rooted.graph().num_nodes(), 0);
  int roots = 1;  // r is always a root of the branching
  for (int s = 0; s < k; ++s) {
    if (parent[s] >= 0) {
      entry_edge[s] = cg.preimage[parent[s]];
      in_r1[rooted.graph().head(entry_edge[s])] = 1;
    } else {
      ++roots;
      entry_edge[s] = rooted.root_edge(cg.entry_points[s].front());
    }
  }
  SolverResult res;
  res.arborescence = expand(rooted, cg, entry_edge);
  res.margin = roots - 1;
  std::vector<char> in_r2(rooted.graph().num_nodes(), 0);
  for (int s = 0; s < k; ++s)
    if (parent[s] < 0) in_r2[cg.entry_points[s].front()] = 1;
  for (int v : rooted.voters()) {
    if (in_r1[v]) res.certificate.push_back(cg.xv[v]);
    else if (!in_r2[v]) res.certificate.push_back({v});
  }
  res.certificate = normalize(std::move(res.certificate));
  return res;
}

}  // namespace popbranch

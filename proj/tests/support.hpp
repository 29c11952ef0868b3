#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "popbranch/generators.hpp"
#include "popbranch/instance.hpp"

namespace popbranch::testing {

// a,b mutual top choices; a,c and b,d mutual second choices.
inline Instance section1() {
  return parse_instance(R"j({
    "nodes": ["a", "b", "c", "d"],
    "edges": [
      {"id": "(b,a)", "tail": "b", "head": "a"}, {"id": "(c,a)", "tail": "c", "head": "a"},
      {"id": "(a,b)", "tail": "a", "head": "b"}, {"id": "(d,b)", "tail": "d", "head": "b"},
      {"id": "(a,c)", "tail": "a", "head": "c"}, {"id": "(d,c)", "tail": "d", "head": "c"},
      {"id": "(b,d)", "tail": "b", "head": "d"}, {"id": "(c,d)", "tail": "c", "head": "d"}
    ],
    "preferences": {
      "a": {"kind": "weak", "ranks": {"(b,a)": 1, "(c,a)": 2}},
      "b": {"kind": "weak", "ranks": {"(a,b)": 1, "(d,b)": 2}},
      "c": {"kind": "weak", "ranks": {"(d,c)": 1, "(a,c)": 2}},
      "d": {"kind": "weak", "ranks": {"(c,d)": 1, "(b,d)": 2}}
    }
  })j");
}

// a parent of b and c; no other edges.
inline Instance star() {
  return parse_instance(R"j({
    "nodes": ["a", "b", "c"],
    "edges": [{"id": "(a,b)", "tail": "a", "head": "b"}, {"id": "(a,c)", "tail": "a", "head": "c"}],
    "preferences": {
      "b": {"kind": "weak", "ranks": {"(a,b)": 1}},
      "c": {"kind": "weak", "ranks": {"(a,c)": 1}}
    }
  })j");
}

inline Instance single_node() { return parse_instance(R"j({"nodes": ["v"], "edges": [], "preferences": {}})j"); }

inline Branching by_ids(const Instance& g, std::vector<std::string> ids) { return branching_from_ids(g, ids); }

// Overlays the 4-node example without a popular branching on the first four
// nodes; the planted edges outrank every other edge into those nodes.
inline Instance plant_core(const Instance& g) {
  InstanceSpec spec = g.to_spec();
  const std::vector<std::string> v(spec.nodes.begin(), spec.nodes.begin() + 4);
  // head, best tail, second tail (indices into v)
  const int core[4][3] = {{0, 1, 2}, {1, 0, 3}, {2, 3, 0}, {3, 2, 1}};
  auto name = [&](int t, int h) { return "(" + v[t] + "," + v[h] + ")"; };
  for (const auto& row : core) {
    const std::string top = name(row[1], row[0]), second = name(row[2], row[0]);
    std::erase_if(spec.edges, [&](const EdgeSpec& e) { return e.id == top || e.id == second; });
    spec.edges.push_back({top, v[row[1]], v[row[0]]});
    spec.edges.push_back({second, v[row[2]], v[row[0]]});
    auto& pref = spec.preferences[v[row[0]]];
    pref.ranks.erase(top);
    pref.ranks.erase(second);
    std::erase_if(pref.dominates, [&](const auto& d) {
      return d.first == top || d.first == second || d.second == top || d.second == second;
    });
    if (pref.kind == PrefKind::Weak) {
      for (auto& [id, r] : pref.ranks) r += 2;
      pref.ranks[top] = 1;
      pref.ranks[second] = 2;
    } else {
      for (const auto& e : spec.edges)
        if (e.head == v[row[0]] && e.id != top && e.id != second) pref.dominates.emplace_back(second, e.id);
      pref.dominates.emplace_back(top, second);
    }
  }
  return Instance::from_spec(spec);
}

// Seeded instance of the randomized suites: n in [1,6], model cycles with the
// seed, every fourth instance with n >= 4 carries a planted core.
inline Instance suite_instance(std::uint64_t seed, bool weak_only = false) {
  const int n = 1 + static_cast<int>(seed % 6);
  // dense enough that instances without a popular branching are common
  const int max_m = std::min(n * (n - 1), 18);
  const int m = max_m / 2 + static_cast<int>((seed * 7919 + 13) % (max_m - max_m / 2 + 1));
  PrefModel model;
  switch (weak_only ? 1 + seed % 2 : seed % 3) {
    case 0: model = PrefModel::strict(); break;
    case 1: model = PrefModel::weak(2 + static_cast<int>(seed % 2)); break;
    default: model = weak_only ? PrefModel::strict() : PrefModel::partial(0.5); break;
  }
  auto g = random_instance(n, m, model, seed);
  if (n >= 4 && (seed / 6) % 4 == 1) return plant_core(g);
  return g;
}

}  // namespace popbranch::testing

namespace popbranch::testing {

inline NodeSet nodes_of(const Instance& g, std::vector<std::string> ids) {
  NodeSet out;
  for (const auto& id : ids) out.push_back(*g.find_node(id));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> sorted_ids(const Instance& g, const Branching& b) {
  auto ids = edge_ids(g, b);
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline std::vector<std::string> edge_names(const Instance& g, std::vector<int> edges) {
  std::vector<std::string> out;
  for (int e : edges) out.push_back(g.edge_id(e));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> set_names(const Instance& g, const NodeSet& set) {
  std::vector<std::string> out;
  for (int v : set) out.push_back(g.node_id(v));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::string>> family_names(const Instance& g, const std::vector<NodeSet>& family) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : family) out.push_back(set_names(g, s));
  std::sort(out.begin(), out.end());
  return out;
}

// Arborescence of the rooted graph from base edge ids; nodes left without a
// parent receive their root edge.
inline Branching arb(const RootedInstance& rooted, std::vector<std::string> ids) {
  return lift(rooted, branching_from_ids(rooted.base(), ids));
}

}  // namespace popbranch::testing

#include <random>

#include "popbranch/arborescence.hpp"

namespace popbranch::testing {

// Random rooted multigraph, every node reachable from the root; costs in [0,max_cost].
inline CostedGraph random_costed_graph(std::uint64_t seed, int max_nodes = 7, int max_cost = 5) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };
  CostedGraph g;
  const int n = 1 + draw(max_nodes);
  g.graph.num_nodes = n;
  g.graph.root = draw(n);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::swap(order[0], order[g.graph.root]);
  for (int i = 1; i < n; ++i) {
    std::swap(order[i], order[i + draw(n - i)]);
    g.graph.arcs.push_back({order[draw(i)], order[i]});
  }
  const int extra = n > 1 ? draw(2 * n + 1) : 0;
  for (int k = 0; k < extra; ++k) {
    const int u = draw(n), v = draw(n);
    if (u != v && v != g.graph.root) g.graph.arcs.push_back({u, v});
  }
  std::shuffle(g.graph.arcs.begin(), g.graph.arcs.end(), rng);
  for (std::size_t i = 0; i < g.graph.arcs.size(); ++i) g.cost.push_back(draw(max_cost + 1));
  return g;
}

// Exhaustive minimum arborescence cost; -1 if none.
inline std::int64_t brute_min_arborescence(const CostedGraph& g) {
  const int n = g.graph.num_nodes;
  std::vector<std::vector<int>> in(n);
  for (std::size_t a = 0; a < g.graph.arcs.size(); ++a) in[g.graph.arcs[a].head].push_back(static_cast<int>(a));
  std::vector<int> choice(n, -1);
  std::int64_t best = -1;
  auto reaches_root = [&](int v) {
    for (int steps = 0; steps <= n; ++steps) {
      if (v == g.graph.root) return true;
      v = g.graph.arcs[choice[v]].tail;
    }
    return false;
  };
  auto rec = [&](auto&& self, int v, std::int64_t acc) -> void {
    if (v == n) {
      for (int u = 0; u < n; ++u)
        if (!reaches_root(u)) return;
      if (best < 0 || acc < best) best = acc;
      return;
    }
    if (v == g.graph.root) return self(self, v + 1, acc);
    for (int a : in[v]) {
      choice[v] = a;
      self(self, v + 1, acc + g.cost[a]);
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace popbranch::testing

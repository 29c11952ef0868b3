#include "popbranch/arborescence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "popbranch/errors.hpp"

namespace popbranch {

Digraph to_digraph(const RootedInstance& rooted) {
  const Instance& g = rooted.graph();
  Digraph d{g.num_nodes(), rooted.root(), {}};
  d.arcs.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) d.arcs.push_back({g.tail(e), g.head(e)});
  return d;
}

std::int64_t LaminarFamily::total() const {
  std::int64_t s = 0;
  for (auto v : values) s += v;
  return s;
}

bool is_laminar(std::span<const NodeSet> sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      const auto& a = sets[i];
      const auto& b = sets[j];
      std::size_t common = 0;
      auto ia = a.begin();
      auto ib = b.begin();
      while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
          ++common;
          ++ia;
          ++ib;
        }
      }
      if (common != 0 && common != a.size() && common != b.size()) return false;
    }
  return true;
}

int first_dual_violation(const CostedGraph& g, const LaminarFamily& family) {
  std::vector<std::vector<char>> member(family.sets.size(), std::vector<char>(g.graph.num_nodes, 0));
  for (std::size_t k = 0; k < family.sets.size(); ++k)
    for (int v : family.sets[k]) member[k][v] = 1;
  for (std::size_t a = 0; a < g.graph.arcs.size(); ++a) {
    const Arc& arc = g.graph.arcs[a];
    std::int64_t load = 0;
    for (std::size_t k = 0; k < family.sets.size(); ++k)
      if (member[k][arc.head] && !member[k][arc.tail]) load += family.values[k];
    if (load > g.cost[a]) return static_cast<int>(a);
  }
  return -1;
}

ArborescenceSolution min_cost_arborescence(const CostedGraph& cg) {
  const Digraph& g = cg.graph;
  const int n = g.num_nodes;
  const auto& arcs = g.arcs;
  if (cg.cost.size() != arcs.size()) throw Error(Errc::BadInput, "cost vector size mismatch");
  for (auto c : cg.cost)
    if (c < 0) throw Error(Errc::BadInput, "negative arc cost");

  struct Level {
    std::vector<int> comp;    // original node -> node at this level
    std::vector<int> choice;  // node at this level -> cheapest entering arc
  };
  std::vector<Level> levels;
  std::map<NodeSet, std::int64_t> duals;

  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<std::int64_t> red(cg.cost);
  int count = n;
  int root = g.root;

  while (true) {
    std::vector<int> best(count, -1);
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
      const int u = comp[arcs[a].tail];
      const int v = comp[arcs[a].head];
      if (u == v || v == root) continue;
      if (best[v] < 0 || red[a] < red[best[v]]) best[v] = a;
    }
    std::vector<NodeSet> members(count);
    for (int x = 0; x < n; ++x) members[comp[x]].push_back(x);
    for (int v = 0; v < count; ++v)
      if (v != root && best[v] < 0)
        throw Error(Errc::Unreachable, "node " + std::to_string(members[v].front()) + " is not reachable from the root");

    std::vector<std::int64_t> minc(count, 0);
    for (int v = 0; v < count; ++v) {
      if (v == root) continue;
      minc[v] = red[best[v]];
      if (minc[v] > 0) duals[members[v]] += minc[v];
    }
    for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
      const int u = comp[arcs[a].tail];
      const int v = comp[arcs[a].head];
      if (u != v && v != root) red[a] -= minc[v];
    }
    levels.push_back({comp, best});

    // Cycles of the chosen arcs become the nodes of the next level.
    std::vector<int> next(count, -1);
    std::vector<int> mark(count, -1);
    int next_count = 0;
    bool contracted = false;
    for (int s = 0; s < count; ++s) {
      if (mark[s] >= 0) continue;
      int v = s;
      while (v != root && mark[v] < 0) {
        mark[v] = s;
        v = comp[arcs[best[v]].tail];
      }
      if (v != root && mark[v] == s && next[v] < 0) {
        contracted = true;
        const int id = next_count++;
        int w = v;
        do {
          next[w] = id;
          w = comp[arcs[best[w]].tail];
        } while (w != v);
      }
    }
    if (!contracted) break;
    for (int v = 0; v < count; ++v)
      if (next[v] < 0) next[v] = next_count++;
    for (int x = 0; x < n; ++x) comp[x] = next[comp[x]];
    root = next[root];
    count = next_count;
  }

  std::vector<int> assigned = levels.back().choice;
  for (int lvl = static_cast<int>(levels.size()) - 2; lvl >= 0; --lvl) {
    std::vector<int> down = levels[lvl].choice;
    for (int a : assigned)
      if (a >= 0) down[levels[lvl].comp[arcs[a].head]] = a;
    assigned = std::move(down);
  }

  ArborescenceSolution sol;
  sol.in_arc.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == g.root) continue;
    sol.in_arc[v] = assigned[v];
    sol.cost += cg.cost[assigned[v]];
  }
  for (auto& [set, value] : duals) {
    sol.dual.sets.push_back(set);
    sol.dual.values.push_back(value);
  }
  return sol;
}

LaminarFamily laminar_dual(const CostedGraph& g) { return min_cost_arborescence(g).dual; }

std::vector<int> strongly_connected_components(const Digraph& g, int* count) {
  const int n = g.num_nodes;
  std::vector<std::vector<int>> out(n);
  for (const auto& a : g.arcs) out[a.tail].push_back(a.head);

  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int next_index = 0;
  int next_comp = 0;
  struct Frame {
    int v;
    std::size_t i;
  };
  for (int s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    std::vector<Frame> call{{s, 0}};
    index[s] = low[s] = next_index++;
    stack.push_back(s);
    on_stack[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.i < out[f.v].size()) {
        const int w = out[f.v][f.i++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const int v = f.v;
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = next_comp;
        } while (w != v);
        ++next_comp;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  if (count != nullptr) *count = next_comp;
  return comp;
}

std::vector<int> max_cardinality_branching(const Digraph& g) {
  const int n = g.num_nodes;
  int k = 0;
  const std::vector<int> comp = strongly_connected_components(g, &k);
  std::vector<char> has_entry(k, 0);
  for (const auto& a : g.arcs)
    if (comp[a.tail] != comp[a.head]) has_entry[comp[a.head]] = 1;

  std::vector<std::vector<int>> out(n);
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) out[g.arcs[a].tail].push_back(a);

  std::vector<int> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<char> rooted(k, 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (!has_entry[comp[v]] && !rooted[comp[v]]) {
      rooted[comp[v]] = 1;
      seen[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int a : out[v]) {
      const int w = g.arcs[a].head;
      if (seen[w]) continue;
      seen[w] = 1;
      parent[w] = a;
      queue.push_back(w);
    }
  }
  return parent;
}

}  // namespace popbranch

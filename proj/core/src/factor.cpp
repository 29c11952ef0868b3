#include "popbranch/factor.hpp"

#include <algorithm>
#include <stdexcept>

#include "popbranch/errors.hpp"

namespace popbranch {

int floor_log2(int n) {
  int k = 0;
  while ((2 << k) <= n) ++k;
  return k;
}

int LayeredFamily::depth() const {
  // Sets sorted by size; chain length via DP over containment.
  std::vector<int> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sets[a].size() < sets[b].size(); });
  std::vector<int> best(sets.size(), 1);
  int deepest = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& outer = sets[order[i]];
    for (std::size_t j = 0; j < i; ++j) {
      const auto& inner = sets[order[j]];
      if (inner.size() < outer.size() && std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()))
        best[order[i]] = std::max(best[order[i]], best[order[j]] + 1);
    }
    deepest = std::max(deepest, best[order[i]]);
  }
  return deepest;
}

namespace {

std::vector<char> reach(const Instance& g, int source, const std::vector<std::vector<int>>& out) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : out[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

NodeSet members(const std::vector<char>& mask) {
  NodeSet s;
  for (int v = 0; v < static_cast<int>(mask.size()); ++v)
    if (mask[v]) s.push_back(v);
  return s;
}

}  // namespace

FactorResult low_factor_arborescence(const RootedInstance& rooted) {
  const Instance& g = rooted.graph();
  if (g.classification() != PreferenceClass::StrictRanking)
    throw Error(Errc::NotStrictRanking, "the low-factor algorithm needs strict rankings at every node");
  const int total = g.num_nodes();
  const std::vector<int> voters = rooted.voters();

  std::vector<char> active(total, 0);
  for (int v : voters) active[v] = 1;
  std::vector<std::vector<char>> x(total, std::vector<char>(total, 0));
  for (int v : voters) x[v][v] = 1;
  std::vector<char> in_eprime(g.num_edges(), 0);
  std::vector<std::vector<int>> out(total);
  std::vector<int> last_edge(total, -1);

  FactorResult res;
  int remaining = static_cast<int>(voters.size());
  int iteration = 0;
  while (remaining > 0) {
    ++iteration;
    const auto prev = x;
    for (int v : voters) {
      if (!active[v]) continue;
      int best = -1;
      for (int e : g.in_edges(v)) {
        if (x[v][g.tail(e)]) continue;
        if (best < 0 || g.prefers(e, best)) best = e;
      }
      // The root edge always qualifies, so best exists.
      last_edge[v] = best;
      if (!in_eprime[best]) {
        in_eprime[best] = 1;
        out[g.tail(best)].push_back(v);
      }
    }
    for (int v : voters)
      if (active[v]) x[v] = reach(g, v, out);

    std::vector<int> order;
    for (int v : voters)
      if (active[v]) order.push_back(v);
    std::vector<int> size(total, 0);
    for (int v : order) size[v] = static_cast<int>(std::count(x[v].begin(), x[v].end(), 1));
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return size[a] > size[b]; });
    std::vector<char> covered(total, 0);
    const std::vector<char> from_root = reach(g, rooted.root(), out);
    auto deactivate = [&](int u) {
      active[u] = 0;
      --remaining;
      res.family.sets.push_back(members(prev[u]));
      res.family.layers.push_back(iteration);
    };
    for (int v : order) {
      if (covered[v] || !active[v]) continue;
      // v is the smallest active node whose set is this maximal set: order is
      // stable by index within equal sizes and nested sets are strictly smaller.
      const auto set = x[v];
      for (int u = 0; u < total; ++u)
        if (set[u]) covered[u] = 1;
      for (int u : voters)
        if (u != v && set[u] && active[u]) deactivate(u);
      if (from_root[v]) deactivate(v);
    }
    res.active_after.push_back(remaining);
  }

  res.iterations = iteration;
  res.t_bound = iteration - 1;
  res.arborescence.in_edge.assign(total, -1);
  for (int v : voters) res.arborescence.in_edge[v] = last_edge[v];
  if (!is_arborescence(rooted, res.arborescence))
    throw std::logic_error("final edges of the factor algorithm do not form an arborescence");
  return res;
}

}  // namespace popbranch

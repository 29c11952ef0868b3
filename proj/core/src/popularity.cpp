#include "popbranch/popularity.hpp"

#include <algorithm>
#include <numeric>

#include "popbranch/errors.hpp"

namespace popbranch {

std::int64_t comparison_cost(const RootedInstance& rooted, const Branching& arborescence, int e, Ratio t) {
  const Instance& g = rooted.graph();
  const int v = g.head(e);
  const int own = arborescence.in_edge[v];
  if (own < 0 || own == e) return t.q;
  if (g.prefers(e, own)) return 0;
  if (g.prefers(own, e)) return t.p + t.q;
  return t.q;
}

std::vector<std::int64_t> comparison_costs(const RootedInstance& rooted, const Branching& arborescence, Ratio t) {
  std::vector<std::int64_t> cost(rooted.graph().num_edges());
  for (int e = 0; e < rooted.graph().num_edges(); ++e) cost[e] = comparison_cost(rooted, arborescence, e, t);
  return cost;
}

ComparisonResult compare_branchings(const Instance& inst, const Branching& first, const Branching& second) {
  ComparisonResult res;
  for (int v = 0; v < inst.num_nodes(); ++v) {
    const int a = first.in_edge[v];
    const int b = second.in_edge[v];
    if (a == b) continue;
    if (b < 0 || (a >= 0 && inst.prefers(a, b))) ++res.for_first;
    else if (a < 0 || inst.prefers(b, a)) ++res.for_second;
  }
  res.delta = res.for_first - res.for_second;
  return res;
}

namespace {

ArborescenceSolution solve_costs(const RootedInstance& rooted, std::vector<std::int64_t> cost) {
  return min_cost_arborescence({to_digraph(rooted), std::move(cost)});
}

}  // namespace

MarginResult unpopularity_margin(const RootedInstance& rooted, const Branching& arborescence) {
  auto sol = solve_costs(rooted, comparison_costs(rooted, arborescence));
  return {rooted.num_voters() - static_cast<int>(sol.cost), Branching{sol.in_arc}};
}

PopularityCheck is_popular(const RootedInstance& rooted, const Branching& arborescence) {
  auto sol = solve_costs(rooted, comparison_costs(rooted, arborescence));
  PopularityCheck out;
  out.margin = rooted.num_voters() - static_cast<int>(sol.cost);
  out.popular = out.margin == 0;
  if (out.popular) out.certificate = normalize(sol.dual.sets);
  return out;
}

FactorCheck check_unpop_factor(const RootedInstance& rooted, const Branching& arborescence, Ratio t) {
  if (t.p <= 0 || t.q <= 0) throw Error(Errc::BadParams, "factor must be a positive rational");
  auto sol = solve_costs(rooted, comparison_costs(rooted, arborescence, t));
  FactorCheck out;
  out.ok = sol.cost >= t.q * rooted.num_voters();
  if (!out.ok) out.witness = Branching{sol.in_arc};
  return out;
}

std::string FactorValue::to_string() const {
  switch (kind) {
    case Kind::Infinite: return "inf";
    case Kind::Vacuous: return "0";
    case Kind::Finite: return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
  }
  return "0";
}

FactorValue unpopularity_factor(const RootedInstance& rooted, const Branching& arborescence) {
  const Instance& g = rooted.graph();
  const int n = rooted.num_voters();
  bool improvable = false;
  for (int e = 0; e < g.num_edges() && !improvable; ++e) {
    const int own = arborescence.in_edge[g.head(e)];
    if (own >= 0 && g.prefers(e, own)) improvable = true;
  }
  if (!improvable) return {FactorValue::Kind::Vacuous, 0, 1};
  if (!check_unpop_factor(rooted, arborescence, {n, 1}).ok) return {FactorValue::Kind::Infinite, 0, 1};

  std::vector<std::pair<std::int64_t, std::int64_t>> cand;
  for (std::int64_t p = 1; p <= n; ++p)
    for (std::int64_t q = 1; q <= n; ++q)
      if (std::gcd(p, q) == 1) cand.emplace_back(p, q);
  std::sort(cand.begin(), cand.end(), [](auto a, auto b) { return a.first * b.second < b.first * a.second; });
  // check is monotone in t; find the smallest candidate that passes.
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (check_unpop_factor(rooted, arborescence, {cand[mid].first, cand[mid].second}).ok)
      hi = mid;
    else
      lo = mid + 1;
  }
  return {FactorValue::Kind::Finite, cand[lo].first, cand[lo].second};
}

DualCertificate normalize(DualCertificate family) {
  for (auto& s : family) std::sort(s.begin(), s.end());
  std::sort(family.begin(), family.end());
  return family;
}

CertificateCheck validate_certificate(const RootedInstance& rooted, const Branching& arborescence,
                                      const DualCertificate& family) {
  const Instance& g = rooted.graph();
  CertificateCheck out;
  out.bound = rooted.num_voters() - static_cast<int>(family.size());
  DualCertificate sets = normalize(family);
  auto name = [&](const NodeSet& s) {
    std::string txt = "{";
    for (std::size_t i = 0; i < s.size(); ++i) txt += (i ? "," : "") + g.node_id(s[i]);
    return txt + "}";
  };
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) out.diagnostics.push_back("empty set");
    for (int v : sets[i])
      if (v < 0 || v >= g.num_nodes() || v == rooted.root())
        out.diagnostics.push_back("set " + std::to_string(i) + " contains an invalid node");
    if (i > 0 && sets[i] == sets[i - 1]) out.diagnostics.push_back("duplicate set " + name(sets[i]));
  }
  if (!out.diagnostics.empty()) return out;
  if (!is_laminar(sets)) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j)
        if (!is_laminar(std::vector<NodeSet>{sets[i], sets[j]}))
          out.diagnostics.push_back("not laminar: " + name(sets[i]) + " crosses " + name(sets[j]));
    return out;
  }
  // Members per node; laminar families with feasible duals are shallow, so
  // the per-edge walk over a node's sets stays cheap.
  std::vector<std::vector<int>> containing(g.num_nodes());
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (int v : sets[k]) containing[v].push_back(static_cast<int>(k));
  for (int e = 0; e < g.num_edges(); ++e) {
    const int u = g.tail(e);
    const int v = g.head(e);
    int entered = 0;
    for (int k : containing[v])
      if (!std::binary_search(sets[k].begin(), sets[k].end(), u)) ++entered;
    const auto cost = comparison_cost(rooted, arborescence, e);
    if (entered > cost)
      out.diagnostics.push_back("edge " + g.edge_id(e) + " enters " + std::to_string(entered) +
                                " sets but costs " + std::to_string(cost));
  }
  out.ok = out.diagnostics.empty();
  return out;
}

}  // namespace popbranch

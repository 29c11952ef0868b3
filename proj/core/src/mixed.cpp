#include "popbranch/mixed.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "popbranch/arborescence.hpp"
#include "popbranch/errors.hpp"
#include "popbranch/lp.hpp"

namespace popbranch {

namespace {

int vote(const Instance& g, int e, int f) {
  if (g.prefers(e, f)) return 1;
  if (g.prefers(f, e)) return -1;
  return 0;
}

void require_size(const RootedInstance& rooted, const FractionalArborescence& x) {
  if (static_cast<int>(x.x.size()) != rooted.graph().num_edges())
    throw Error(Errc::InfeasiblePoint, "point has the wrong dimension");
}

bool degrees_hold(const RootedInstance& rooted, const FractionalArborescence& x) {
  const Instance& g = rooted.graph();
  for (const auto& v : x.x)
    if (v < 0 || v > 1) return false;
  for (int v : rooted.voters()) {
    mpq_class s = 0;
    for (int e : g.in_edges(v)) s += x.x[e];
    if (s != 1) return false;
  }
  return true;
}

// Scales rationals to a common denominator; returns false on int64 overflow
// of `limit * L`.
bool common_denominator(const std::vector<mpq_class>& values, std::int64_t limit, mpz_class& lcm) {
  lcm = 1;
  for (const auto& v : values) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    if (lcm > std::numeric_limits<std::int64_t>::max() / limit) return false;
  }
  return true;
}

std::int64_t to_int64(const mpq_class& q) {
  mpz_class z = q.get_num() / q.get_den();
  return static_cast<std::int64_t>(z.get_si());
}

// Edmonds-Karp from the root to `sink` with rational capacities; returns the
// residual-reachable node mask once the flow reaches 1 or saturates.
std::pair<mpq_class, std::vector<char>> max_flow(const RootedInstance& rooted, const std::vector<mpq_class>& cap,
                                                 int sink) {
  const Instance& g = rooted.graph();
  const int n = g.num_nodes();
  std::vector<mpq_class> flow(g.num_edges(), 0);
  mpq_class value = 0;
  while (true) {
    // parent: edge index; sign marks a backward traversal.
    std::vector<int> via(n, 0);
    std::vector<char> seen(n, 0);
    std::deque<int> queue{rooted.root()};
    seen[rooted.root()] = 1;
    while (!queue.empty() && !seen[sink]) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : g.out_edges(v)) {
        const int w = g.head(e);
        if (!seen[w] && flow[e] < cap[e]) {
          seen[w] = 1;
          via[w] = e + 1;
          queue.push_back(w);
        }
      }
      for (int e : g.in_edges(v)) {
        const int w = g.tail(e);
        if (!seen[w] && flow[e] > 0) {
          seen[w] = 1;
          via[w] = -(e + 1);
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink] || value >= 1) return {value, seen};
    mpq_class bottleneck = 1 - value;
    for (int v = sink; v != rooted.root();) {
      const int e = std::abs(via[v]) - 1;
      if (via[v] > 0) {
        bottleneck = std::min(bottleneck, mpq_class(cap[e] - flow[e]));
        v = g.tail(e);
      } else {
        bottleneck = std::min(bottleneck, flow[e]);
        v = g.head(e);
      }
    }
    for (int v = sink; v != rooted.root();) {
      const int e = std::abs(via[v]) - 1;
      if (via[v] > 0) {
        flow[e] += bottleneck;
        v = g.tail(e);
      } else {
        flow[e] -= bottleneck;
        v = g.head(e);
      }
    }
    value += bottleneck;
  }
}

}  // namespace

std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

FractionalArborescence indicator(const RootedInstance& rooted, const Branching& arborescence) {
  FractionalArborescence x{std::vector<mpq_class>(rooted.graph().num_edges(), 0)};
  for (int e : arborescence.edges()) x.x[e] = 1;
  return x;
}

FractionalArborescence resum(const RootedInstance& rooted, const MixedBranching& mixed) {
  FractionalArborescence x{std::vector<mpq_class>(rooted.graph().num_edges(), 0)};
  for (const auto& c : mixed.components) {
    mpq_class w = c.weight;
    w.canonicalize();
    for (int e : c.arborescence.edges()) x.x[e] += w;
  }
  return x;
}

mpq_class delta_mixed(const RootedInstance& rooted, const FractionalArborescence& x, const FractionalArborescence& y) {
  require_size(rooted, x);
  require_size(rooted, y);
  if (!separate_membership(rooted, x).ok || !separate_membership(rooted, y).ok)
    throw Error(Errc::InfeasiblePoint, "point outside the arborescence polytope");
  const Instance& g = rooted.graph();
  mpq_class total = 0;
  for (int u : rooted.voters())
    for (int e : g.in_edges(u)) {
      if (x.x[e] == 0) continue;
      for (int f : g.in_edges(u)) {
        const int s = vote(g, e, f);
        if (s != 0 && y.x[f] != 0) total += s * x.x[e] * y.x[f];
      }
    }
  return total;
}

MembershipResult separate_membership(const RootedInstance& rooted, const FractionalArborescence& x) {
  require_size(rooted, x);
  const Instance& g = rooted.graph();
  MembershipResult res;
  for (int e = 0; e < g.num_edges(); ++e)
    if (x.x[e] < 0 || x.x[e] > 1) {
      res.ok = false;
      res.degree_node = g.head(e);
      return res;
    }
  for (int v : rooted.voters()) {
    mpq_class s = 0;
    for (int e : g.in_edges(v)) s += x.x[e];
    if (s != 1) {
      res.ok = false;
      res.degree_node = v;
      if (s < 1) res.cut = NodeSet{v};
      return res;
    }
  }
  for (int v : rooted.voters()) {
    auto [value, reach] = max_flow(rooted, x.x, v);
    if (value >= 1) continue;
    NodeSet cut;
    for (int w : rooted.voters())
      if (!reach[w]) cut.push_back(w);
    res.ok = false;
    res.cut = std::move(cut);
    return res;
  }
  return res;
}

PopularityResult separate_popularity(const RootedInstance& rooted, const FractionalArborescence& x) {
  require_size(rooted, x);
  if (!degrees_hold(rooted, x)) throw Error(Errc::InfeasiblePoint, "in-degree equalities violated");
  const Instance& g = rooted.graph();
  const std::int64_t n = rooted.num_voters();
  mpz_class lcm;
  if (!common_denominator(x.x, 4 * (n + 1), lcm))
    throw Error(Errc::BudgetExceeded, "scaled costs exceed 64-bit range");
  const std::int64_t scale = lcm.get_si();

  CostedGraph cg{to_digraph(rooted), std::vector<std::int64_t>(g.num_edges(), 0)};
  for (int e = 0; e < g.num_edges(); ++e) {
    mpq_class c = 0;
    for (int f : g.in_edges(g.head(e))) {
      const int s = vote(g, f, e);
      if (s != 0) c += s * x.x[f];
    }
    // c lies in [-1, 1]; the per-head shift by `scale` keeps costs >= 0.
    cg.cost[e] = to_int64(c * scale) + scale;
  }
  const auto sol = min_cost_arborescence(cg);
  PopularityResult res;
  res.min_delta = mpq_class(sol.cost - scale * n, scale);
  res.min_delta.canonicalize();
  res.ok = res.min_delta >= 0;
  if (!res.ok) res.witness = Branching{sol.in_arc};
  return res;
}

MixedBranching popular_mixed_branching(const RootedInstance& rooted, const MixedOptions& options) {
  const Instance& g = rooted.graph();
  const int n = rooted.num_voters();
  if (n > options.max_nodes)
    throw Error(Errc::BudgetExceeded, std::to_string(n) + " nodes exceed the mixed solver limit of " +
                                          std::to_string(options.max_nodes));
  const int m = g.num_edges();
  const int w = m;  // w = z + n, z the worst-case Δ against generated arborescences

  LpProblem lp;
  lp.num_vars = m + 1;
  lp.objective.assign(m + 1, 0);
  lp.objective[w] = -1;
  for (int v : rooted.voters()) {
    LpRow row;
    row.sense = Sense::Eq;
    row.rhs = 1;
    for (int e : g.in_edges(v)) row.terms.emplace_back(e, 1);
    lp.rows.push_back(std::move(row));
  }
  lp.rows.push_back({{{w, mpq_class(1)}}, Sense::LessEq, mpq_class(2 * n)});

  for (std::size_t round = 0; round < options.max_rounds; ++round) {
    const LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw Error(Errc::InfeasiblePoint, "relaxation has no optimum");
    FractionalArborescence x{std::vector<mpq_class>(sol.x.begin(), sol.x.begin() + m)};

    const MembershipResult mem = separate_membership(rooted, x);
    if (!mem.ok) {
      if (!mem.cut) throw Error(Errc::InfeasiblePoint, "in-degree equality violated by the relaxation");
      const std::vector<char> mask = [&] {
        std::vector<char> mk(g.num_nodes(), 0);
        for (int v : *mem.cut) mk[v] = 1;
        return mk;
      }();
      LpRow row;
      row.sense = Sense::GreaterEq;
      row.rhs = 1;
      for (int e = 0; e < m; ++e)
        if (mask[g.head(e)] && !mask[g.tail(e)]) row.terms.emplace_back(e, 1);
      lp.rows.push_back(std::move(row));
      continue;
    }
    const PopularityResult pop = separate_popularity(rooted, x);
    if (!pop.ok) {
      // w - Δ(x, A) <= n
      LpRow row;
      row.sense = Sense::LessEq;
      row.rhs = n;
      row.terms.emplace_back(w, 1);
      for (int e = 0; e < m; ++e) {
        const int s = vote(g, e, pop.witness->in_edge[g.head(e)]);
        if (s != 0) row.terms.emplace_back(e, -s);
      }
      lp.rows.push_back(std::move(row));
      continue;
    }
    return decompose_fractional(rooted, x);
  }
  throw Error(Errc::BudgetExceeded, "constraint generation round budget exhausted");
}

MixedBranching decompose_fractional(const RootedInstance& rooted, const FractionalArborescence& x,
                                    std::size_t max_columns) {
  require_size(rooted, x);
  if (!separate_membership(rooted, x).ok) throw Error(Errc::InfeasiblePoint, "point outside the arborescence polytope");
  const Instance& g = rooted.graph();
  std::vector<int> support;
  std::vector<int> row_of(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e)
    if (x.x[e] > 0) {
      row_of[e] = static_cast<int>(support.size());
      support.push_back(e);
    }
  CostedGraph pricing;
  pricing.graph.num_nodes = g.num_nodes();
  pricing.graph.root = rooted.root();
  for (int e : support) pricing.graph.arcs.push_back({g.tail(e), g.head(e)});

  std::vector<Branching> columns;
  const std::int64_t n = rooted.num_voters();
  while (true) {
    LpProblem master;
    master.num_vars = static_cast<int>(columns.size());
    master.objective.assign(columns.size(), -1);
    master.rows.resize(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      master.rows[i].sense = Sense::LessEq;
      master.rows[i].rhs = x.x[support[i]];
    }
    for (std::size_t k = 0; k < columns.size(); ++k)
      for (int e : columns[k].edges()) master.rows[row_of[e]].terms.emplace_back(static_cast<int>(k), 1);
    const LpSolution sol = solve_lp(master);
    if (sol.status != LpStatus::Optimal) throw Error(Errc::InfeasiblePoint, "decomposition master failed");

    std::vector<mpq_class> price(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) price[i] = -sol.duals[i];
    mpz_class lcm;
    if (!common_denominator(price, 4 * (n + 1), lcm))
      throw Error(Errc::SupportTooLarge, "pricing costs exceed 64-bit range");
    const std::int64_t scale = lcm.get_si();
    pricing.cost.assign(support.size(), 0);
    for (std::size_t i = 0; i < support.size(); ++i) pricing.cost[i] = to_int64(price[i] * scale);
    ArborescenceSolution arb;
    try {
      arb = min_cost_arborescence(pricing);
    } catch (const Error& err) {
      if (err.code() == Errc::Unreachable) throw Error(Errc::InfeasiblePoint, "support contains no arborescence");
      throw;
    }
    if (arb.cost < scale) {
      if (columns.size() >= max_columns) throw Error(Errc::SupportTooLarge, "decomposition column budget exhausted");
      Branching a{std::vector<int>(g.num_nodes(), -1)};
      for (int v = 0; v < g.num_nodes(); ++v)
        if (arb.in_arc[v] >= 0) a.in_edge[v] = support[arb.in_arc[v]];
      if (std::find(columns.begin(), columns.end(), a) != columns.end())
        throw Error(Errc::InfeasiblePoint, "column generation stalled");
      columns.push_back(std::move(a));
      continue;
    }
    if (-sol.value != 1) throw Error(Errc::InfeasiblePoint, "point is not a convex combination of arborescences");

    MixedBranching out;
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (sol.x[k] > 0) out.components.push_back({columns[k], sol.x[k]});
    std::sort(out.components.begin(), out.components.end(),
              [](const MixedComponent& a, const MixedComponent& b) { return a.arborescence.edges() < b.arborescence.edges(); });
    const auto back = resum(rooted, out);
    if (back.x != x.x) throw Error(Errc::InfeasiblePoint, "decomposition does not reproduce the point");
    return out;
  }
}

}  // namespace popbranch

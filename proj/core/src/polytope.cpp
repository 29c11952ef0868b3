#include "popbranch/polytope.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "popbranch/arborescence.hpp"
#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

void require_weak(const RootedInstance& rooted) {
  if (rooted.graph().classification() == PreferenceClass::PartialOrder)
    throw Error(Errc::NotWeakRanking, "the popular arborescence polytope needs weak rankings");
}

std::string sanitize(const std::string& id) {
  std::string out;
  for (char c : id) {
    if (c == '(' || c == ')') continue;
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    out += ok ? c : '_';
  }
  return out;
}

}  // namespace

DStarGraph build_dstar(const RootedInstance& rooted) {
  DStarGraph d{build_contraction(rooted), {}};
  for (const auto& s : d.contraction.safe) d.edges.insert(d.edges.end(), s.begin(), s.end());
  d.edges.insert(d.edges.end(), d.contraction.preimage.begin(), d.contraction.preimage.end());
  std::sort(d.edges.begin(), d.edges.end());
  d.edges.erase(std::unique(d.edges.begin(), d.edges.end()), d.edges.end());
  return d;
}

bool is_popular_structural(const RootedInstance& rooted, const Branching& arborescence) {
  require_weak(rooted);
  return is_popular_structural(rooted, build_dstar(rooted), arborescence);
}

bool is_popular_structural(const RootedInstance& rooted, const DStarGraph& dstar, const Branching& arborescence) {
  require_weak(rooted);
  if (!is_arborescence(rooted, arborescence)) return false;
  for (int e : arborescence.edges())
    if (!std::binary_search(dstar.edges.begin(), dstar.edges.end(), e)) return false;
  const auto& cg = dstar.contraction;
  for (std::size_t s = 0; s < cg.supernodes.size(); ++s) {
    std::size_t inside = 0;
    for (int v : cg.supernodes[s]) {
      const int e = arborescence.in_edge[v];
      if (std::binary_search(cg.safe[s].begin(), cg.safe[s].end(), e)) ++inside;
    }
    if (inside + 1 != cg.supernodes[s].size()) return false;
  }
  return true;
}

std::optional<CostedArborescence> min_cost_popular_branching(const RootedInstance& rooted,
                                                             std::span<const std::int64_t> cost) {
  require_weak(rooted);
  const Instance& g = rooted.graph();
  if (static_cast<int>(cost.size()) != g.num_edges()) throw Error(Errc::BadInput, "one cost per edge expected");
  const ContractionGraph cg = build_contraction(rooted);
  const int k = static_cast<int>(cg.supernodes.size());

  std::int64_t low = 0;
  for (auto c : cost) low = std::min(low, c);
  // Every arborescence of a fixed node set has the same arc count, so a
  // uniform shift keeps the argmin.
  const std::int64_t shift = -low;

  // inner[v]: cheapest safe arborescence of X_v rooted at entry point v.
  std::map<int, std::pair<std::int64_t, std::vector<int>>> inner;
  for (int s = 0; s < k; ++s) {
    const NodeSet& members = cg.supernodes[s];
    std::map<int, int> local;
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    for (int v : cg.entry_points[s]) {
      if (members.size() == 1) {
        inner[v] = {0, {}};
        continue;
      }
      CostedGraph sub;
      sub.graph.num_nodes = static_cast<int>(members.size());
      sub.graph.root = local[v];
      for (int e : cg.safe[s]) {
        sub.graph.arcs.push_back({local[g.tail(e)], local[g.head(e)]});
        sub.cost.push_back(cost[e] + shift);
      }
      const auto sol = min_cost_arborescence(sub);
      std::vector<int> edges;
      std::int64_t total = 0;
      for (int a : sol.in_arc)
        if (a >= 0) {
          edges.push_back(cg.safe[s][a]);
          total += cost[cg.safe[s][a]];
        }
      inner[v] = {total, std::move(edges)};
    }
  }

  if (!popular_arborescence(rooted, cg)) return std::nullopt;

  std::vector<std::int64_t> weight(cg.preimage.size());
  std::int64_t wlow = 0;
  for (std::size_t a = 0; a < cg.preimage.size(); ++a) {
    const int e = cg.preimage[a];
    weight[a] = cost[e] + inner.at(g.head(e)).first;
    wlow = std::min(wlow, weight[a]);
  }
  for (auto& w : weight) w -= wlow;
  const auto sol = min_cost_arborescence({cg.dprime, weight});

  CostedArborescence out;
  out.arborescence.in_edge.assign(g.num_nodes(), -1);
  for (int s = 0; s < k; ++s) {
    const int e = cg.preimage[sol.in_arc[s]];
    out.arborescence.in_edge[g.head(e)] = e;
    for (int f : inner.at(g.head(e)).second) out.arborescence.in_edge[g.head(f)] = f;
  }
  for (int e : out.arborescence.edges()) out.cost += cost[e];
  return out;
}

// ---------------------------------------------------------------------------

int LinearSystem::find_var(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

bool LinearSystem::satisfied_by(std::span<const std::int64_t> point) const {
  if (point.size() != vars.size()) return false;
  for (int v : nonneg)
    if (point[v] < 0) return false;
  for (const auto& row : rows) {
    std::int64_t lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * point[t.var];
    if (row.sense == Sense::LessEq && lhs > row.rhs) return false;
    if (row.sense == Sense::Eq && lhs != row.rhs) return false;
    if (row.sense == Sense::GreaterEq && lhs < row.rhs) return false;
  }
  return true;
}

std::string LinearSystem::to_text() const {
  std::ostringstream os;
  for (const auto& c : comments) os << "\\ " << c << "\n";
  os << "minimize\n obj: 0\nsubject to\n";
  for (const auto& row : rows) {
    os << " " << row.name << ":";
    if (row.terms.empty()) os << " 0";
    for (std::size_t i = 0; i < row.terms.size(); ++i) {
      const auto& t = row.terms[i];
      const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
      if (t.coef < 0) os << " -";
      else if (i > 0) os << " +";
      os << " ";
      if (mag != 1) os << mag << " ";
      os << vars[t.var];
    }
    os << (row.sense == Sense::LessEq ? " <= " : row.sense == Sense::Eq ? " = " : " >= ") << row.rhs << "\n";
  }
  os << "bounds\n";
  for (int v : nonneg) os << " " << vars[v] << " >= 0\n";
  os << "end\n";
  return os.str();
}

namespace {

// Stable variable names: sanitized ids, disambiguated by edge index on clash.
std::vector<std::string> edge_names(const RootedInstance& rooted) {
  const Instance& g = rooted.graph();
  std::vector<std::string> names(g.num_edges());
  std::map<std::string, int> uses;
  for (int e = 0; e < g.num_edges(); ++e) ++uses[sanitize(g.edge_id(e))];
  for (int e = 0; e < g.num_edges(); ++e) {
    std::string base = sanitize(g.edge_id(e));
    names[e] = uses[base] > 1 ? base + "_" + std::to_string(e) : base;
  }
  return names;
}

std::string set_name(const RootedInstance& rooted, const NodeSet& set) {
  std::string out;
  for (int v : set) out += "_" + sanitize(rooted.graph().node_id(v));
  return out;
}

}  // namespace

std::string edge_var(const RootedInstance& rooted, int e) { return "x_" + edge_names(rooted)[e]; }

std::string flow_var(const RootedInstance& rooted, int e, int v) {
  return "f_" + edge_names(rooted)[e] + "_" + sanitize(rooted.graph().node_id(v));
}

LinearSystem emit_face_lp(const RootedInstance& rooted, int cutoff) {
  require_weak(rooted);
  const Instance& g = rooted.graph();
  const int n = rooted.num_voters();
  if (n > cutoff)
    throw Error(Errc::TooLarge, std::to_string(n) + " nodes exceed the face LP cutoff of " + std::to_string(cutoff));
  const DStarGraph dstar = build_dstar(rooted);
  const auto names = edge_names(rooted);
  const std::vector<int> voters = rooted.voters();

  LinearSystem lp;
  lp.comments.push_back("popular arborescence face");
  lp.comments.push_back("n = " + std::to_string(n) + ", m = " + std::to_string(g.num_edges()) +
                        ", maximal sets = " + std::to_string(dstar.contraction.supernodes.size()));
  for (int e = 0; e < g.num_edges(); ++e) lp.vars.push_back("x_" + names[e]);

  auto inside_terms = [&](const NodeMask& mask) {
    std::vector<LinearTerm> terms;
    for (int e = 0; e < g.num_edges(); ++e)
      if (mask[g.tail(e)] && mask[g.head(e)]) terms.push_back({1, e});
    return terms;
  };

  // Subtour rows, subsets by increasing bitmask.
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    if (__builtin_popcountll(bits) < 2) continue;
    NodeSet set;
    for (int i = 0; i < n; ++i)
      if ((bits >> i) & 1U) set.push_back(voters[i]);
    lp.rows.push_back({"sub" + set_name(rooted, set), inside_terms(to_mask(rooted, set)), Sense::LessEq,
                       static_cast<std::int64_t>(set.size()) - 1});
  }
  for (int v : voters) {
    LinearRow row{"indeg_" + sanitize(g.node_id(v)), {}, Sense::Eq, 1};
    for (int e : g.in_edges(v)) row.terms.push_back({1, e});
    std::sort(row.terms.begin(), row.terms.end(), [](auto a, auto b) { return a.var < b.var; });
    lp.rows.push_back(std::move(row));
  }
  for (const auto& set : dstar.contraction.supernodes) {
    if (set.size() < 2) continue;
    lp.rows.push_back({"tight" + set_name(rooted, set), inside_terms(to_mask(rooted, set)), Sense::Eq,
                       static_cast<std::int64_t>(set.size()) - 1});
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!std::binary_search(dstar.edges.begin(), dstar.edges.end(), e))
      lp.rows.push_back({"zero_" + names[e], {{1, e}}, Sense::Eq, 0});
  for (int e = 0; e < g.num_edges(); ++e) lp.nonneg.push_back(e);
  return lp;
}

LinearSystem emit_extended_lp(const RootedInstance& rooted) {
  require_weak(rooted);
  const Instance& g = rooted.graph();
  const int n = rooted.num_voters();
  const DStarGraph dstar = build_dstar(rooted);
  const auto names = edge_names(rooted);
  const std::vector<int> voters = rooted.voters();
  const std::vector<int>& edges = dstar.edges;
  const int m = static_cast<int>(edges.size());

  LinearSystem lp;
  lp.comments.push_back("popular arborescence extended formulation");
  lp.comments.push_back("n = " + std::to_string(n) + ", m = " + std::to_string(g.num_edges()) +
                        ", dstar edges = " + std::to_string(m) +
                        ", maximal sets = " + std::to_string(dstar.contraction.supernodes.size()));
  for (int e : edges) lp.vars.push_back("x_" + names[e]);
  // f variables: commodity-major.
  auto fvar = [&](int k, int i) { return m + k * m + i; };
  for (int v : voters)
    for (int e : edges) lp.vars.push_back("f_" + names[e] + "_" + sanitize(g.node_id(v)));

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i)
      lp.rows.push_back({"cap_" + names[edges[i]] + "_" + sanitize(g.node_id(voters[k])),
                         {{1, i}, {-1, fvar(k, i)}}, Sense::GreaterEq, 0});
  for (int k = 0; k < n; ++k) {
    LinearRow row{"out_" + sanitize(g.node_id(voters[k])), {}, Sense::Eq, 1};
    for (int i = 0; i < m; ++i)
      if (g.tail(edges[i]) == rooted.root()) row.terms.push_back({1, fvar(k, i)});
    lp.rows.push_back(std::move(row));
  }
  for (int k = 0; k < n; ++k)
    for (int u : voters) {
      if (u == voters[k]) continue;
      LinearRow row{"cons_" + sanitize(g.node_id(u)) + "_" + sanitize(g.node_id(voters[k])), {}, Sense::Eq, 0};
      for (int i = 0; i < m; ++i) {
        if (g.tail(edges[i]) == u) row.terms.push_back({1, fvar(k, i)});
        if (g.head(edges[i]) == u) row.terms.push_back({-1, fvar(k, i)});
      }
      lp.rows.push_back(std::move(row));
    }
  {
    LinearRow row{"card", {}, Sense::Eq, n};
    for (int i = 0; i < m; ++i) row.terms.push_back({1, i});
    lp.rows.push_back(std::move(row));
  }
  for (const auto& set : dstar.contraction.supernodes) {
    if (set.size() < 2) continue;
    const NodeMask mask = to_mask(rooted, set);
    LinearRow row{"tight" + set_name(rooted, set), {}, Sense::Eq, static_cast<std::int64_t>(set.size()) - 1};
    for (int i = 0; i < m; ++i)
      if (mask[g.tail(edges[i])] && mask[g.head(edges[i])]) row.terms.push_back({1, i});
    lp.rows.push_back(std::move(row));
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i) lp.nonneg.push_back(fvar(k, i));
  return lp;
}

}  // namespace popbranch

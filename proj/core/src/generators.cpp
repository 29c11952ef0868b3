#include "popbranch/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "popbranch/errors.hpp"

namespace popbranch {

namespace {

using Rng = std::mt19937_64;

// Explicit modular draws keep golden outputs independent of the standard
// library's distribution implementation.
std::uint64_t draw(Rng& rng, std::uint64_t bound) { return rng() % bound; }

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

bool chance(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

std::string edge_name(const std::string& u, const std::string& v) { return "(" + u + "," + v + ")"; }

std::string padded(int i, int n) {
  const int width = static_cast<int>(std::to_string(std::max(n - 1, 0)).size());
  std::string s = std::to_string(i);
  return "v" + std::string(width - s.size(), '0') + s;
}

// Strict ranking in the listed order.
PreferenceSpec ranking(const std::vector<std::string>& best_first) {
  PreferenceSpec p;
  p.kind = PrefKind::Weak;
  for (std::size_t i = 0; i < best_first.size(); ++i) p.ranks[best_first[i]] = static_cast<long long>(i + 1);
  return p;
}

std::string num(int i) { return std::to_string(i); }

// Same ordering as parsing, so generated instances survive a serialize round trip.
Instance canonical(std::vector<std::string> nodes, std::vector<EdgeSpec> edges, std::map<std::string, PreferenceSpec> prefs) {
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  return assemble_instance(std::move(nodes), std::move(edges), std::move(prefs));
}

}  // namespace

// ---------------------------------------------------------------------------

Instance random_instance(int n, int m, const PrefModel& model, std::uint64_t seed) {
  if (n < 1 || m < 0) throw Error(Errc::BadParams, "need n >= 1 and m >= 0");
  if (static_cast<long long>(m) > static_cast<long long>(n) * (n - 1))
    throw Error(Errc::BadParams, "m exceeds n(n-1) for a simple digraph");
  if (model.kind == PrefModel::Kind::Weak && model.max_ties < 1) throw Error(Errc::BadParams, "max ties must be >= 1");
  if (model.kind == PrefModel::Kind::Partial && !(model.density >= 0 && model.density <= 1))
    throw Error(Errc::BadParams, "density must lie in [0,1]");

  Rng rng(seed);
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(padded(i, n));

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) pairs.emplace_back(u, v);
  // partial Fisher-Yates: first m entries are a uniform sample
  for (int i = 0; i < m; ++i) std::swap(pairs[i], pairs[i + draw(rng, pairs.size() - i)]);
  pairs.resize(m);
  std::sort(pairs.begin(), pairs.end());

  std::vector<EdgeSpec> edges;
  std::map<std::string, std::vector<std::string>> incoming;
  for (auto [u, v] : pairs) {
    edges.push_back({edge_name(nodes[u], nodes[v]), nodes[u], nodes[v]});
    incoming[nodes[v]].push_back(edges.back().id);
  }

  std::map<std::string, PreferenceSpec> prefs;
  for (const auto& v : nodes) {
    auto in = incoming[v];
    shuffle(in, rng);
    PreferenceSpec p;
    switch (model.kind) {
      case PrefModel::Kind::Strict:
        p = ranking(in);
        break;
      case PrefModel::Kind::Weak: {
        p.kind = PrefKind::Weak;
        long long rank = 0;
        for (std::size_t i = 0; i < in.size();) {
          const std::size_t size = 1 + draw(rng, static_cast<std::uint64_t>(model.max_ties));
          ++rank;
          for (std::size_t k = 0; k < size && i < in.size(); ++k, ++i) p.ranks[in[i]] = rank;
        }
        break;
      }
      case PrefModel::Kind::Partial:
        // pairs consistent with the shuffled order are acyclic by construction
        p.kind = PrefKind::Partial;
        for (std::size_t i = 0; i < in.size(); ++i)
          for (std::size_t j = i + 1; j < in.size(); ++j)
            if (chance(rng, model.density)) p.dominates.emplace_back(in[i], in[j]);
        break;
    }
    prefs[v] = std::move(p);
  }
  return canonical(std::move(nodes), std::move(edges), std::move(prefs));
}

Instance tight_factor_instance(int k) {
  if (k < 1 || k > 20) throw Error(Errc::BadParams, "k must lie in [1,20]");
  const int n = 1 << k;
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back("v" + num(i));
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> prefs;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> order;
    for (int t = 1; t <= k; ++t) {
      const int block = 1 << t;
      const int l = (i / block) * block + ((i + block / 2) % block);
      edges.push_back({edge_name(nodes[l], nodes[i]), nodes[l], nodes[i]});
      order.push_back(edges.back().id);
    }
    prefs[nodes[i]] = ranking(order);
  }
  return canonical(std::move(nodes), std::move(edges), std::move(prefs));
}

Instance complete_top_instance(int n) {
  if (n < 2) throw Error(Errc::BadParams, "n must be >= 2");
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(padded(i, n));
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> prefs;
  for (const auto& v : nodes) prefs[v].kind = PrefKind::Weak;
  for (const auto& u : nodes)
    for (const auto& v : nodes)
      if (u != v) {
        edges.push_back({edge_name(u, v), u, v});
        prefs[v].ranks[edges.back().id] = 1;
      }
  return canonical(std::move(nodes), std::move(edges), std::move(prefs));
}

// ---------------------------------------------------------------------------
// 3-SAT
// ---------------------------------------------------------------------------

Cnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  Cnf cnf;
  bool header = false;
  long long declared_clauses = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf" || cnf.num_vars < 0 ||
          declared_clauses < 0)
        throw Error(Errc::Syntax, "bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw Error(Errc::Syntax, "clause before DIMACS header");
    ls.clear();
    ls.seekg(0);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > cnf.num_vars) throw Error(Errc::Syntax, "literal out of range: " + std::to_string(lit));
      current.push_back(static_cast<int>(lit));
    }
    if (!ls.eof()) throw Error(Errc::Syntax, "non-numeric token in clause line: " + line);
  }
  if (!header) throw Error(Errc::Syntax, "missing DIMACS header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (static_cast<long long>(cnf.clauses.size()) != declared_clauses)
    throw Error(Errc::Syntax, "clause count does not match header");
  return cnf;
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

std::string a_node(int i, int k) { return "a_" + num(i) + "_" + num((k + 8) % 9 + 1); }
std::string c_node(int j, int k, int h) { return "c_" + num(j) + "_" + num((k + h - 1) % h + 1); }
std::string literal_node(int lit) { return (lit > 0 ? "t_" : "f_") + num(std::abs(lit)); }

}  // namespace

SatReduction reduce_3sat(const Cnf& formula) {
  std::vector<int> occurrences(formula.num_vars + 1, 0);
  for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
    const auto& c = formula.clauses[j];
    if (c.size() < 2 || c.size() > 3)
      throw Error(Errc::BadFormula, "clause " + num(static_cast<int>(j + 1)) + " has width " + num(static_cast<int>(c.size())) +
                                        "; widths 2 and 3 are supported");
    for (int lit : c) {
      if (lit == 0 || std::abs(lit) > formula.num_vars) throw Error(Errc::BadFormula, "literal out of range");
      if (++occurrences[std::abs(lit)] > 3)
        throw Error(Errc::BadFormula, "variable " + num(std::abs(lit)) + " occurs more than 3 times");
    }
  }

  std::vector<std::string> nodes;
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> prefs;
  auto add = [&](const std::string& u, const std::string& v) {
    edges.push_back({edge_name(u, v), u, v});
    return edges.back().id;
  };
  for (int i = 1; i <= formula.num_vars; ++i) {
    nodes.push_back("t_" + num(i));
    nodes.push_back("f_" + num(i));
    for (int k = 1; k <= 9; ++k) nodes.push_back(a_node(i, k));
    for (int k = 1; k <= 9; ++k) {
      const std::string top = add(a_node(i, k - 1), a_node(i, k));
      const std::string second = add(k == 1 ? "t_" + num(i) : "f_" + num(i), a_node(i, k));
      prefs[a_node(i, k)] = ranking({top, second});
    }
  }
  for (std::size_t jj = 0; jj < formula.clauses.size(); ++jj) {
    const int j = static_cast<int>(jj + 1);
    const auto& c = formula.clauses[jj];
    const int h = static_cast<int>(c.size());
    for (int k = 1; k <= h; ++k) nodes.push_back(c_node(j, k, h));
    for (int k = 1; k <= h; ++k) {
      const std::string top = add(c_node(j, k - 1, h), c_node(j, k, h));
      const std::string second = add(literal_node(c[k - 1]), c_node(j, k, h));
      prefs[c_node(j, k, h)] = ranking({top, second});
    }
  }
  return {formula, canonical(std::move(nodes), std::move(edges), std::move(prefs))};
}

Branching assignment_to_branching(const SatReduction& reduction, const std::vector<bool>& assignment) {
  const Cnf& f = reduction.formula;
  if (static_cast<int>(assignment.size()) != f.num_vars)
    throw Error(Errc::BadInput, "assignment has " + num(static_cast<int>(assignment.size())) + " values for " +
                                    num(f.num_vars) + " variables");
  std::vector<std::string> ids;
  for (int i = 1; i <= f.num_vars; ++i) {
    // true: enter A_i at a_i^2 from f_i; false: at a_i^1 from t_i
    const int entry = assignment[i - 1] ? 2 : 1;
    ids.push_back(edge_name(assignment[i - 1] ? "f_" + num(i) : "t_" + num(i), a_node(i, entry)));
    for (int k = 1; k <= 9; ++k)
      if (k != entry) ids.push_back(edge_name(a_node(i, k - 1), a_node(i, k)));
  }
  for (std::size_t jj = 0; jj < f.clauses.size(); ++jj) {
    const int j = static_cast<int>(jj + 1);
    const auto& c = f.clauses[jj];
    const int h = static_cast<int>(c.size());
    int chosen = 0;
    for (int k = 1; k <= h && !chosen; ++k) {
      const int lit = c[k - 1];
      if (assignment[std::abs(lit) - 1] == (lit > 0)) chosen = k;
    }
    if (!chosen) throw Error(Errc::Unsatisfied, "clause " + num(j) + " has no true literal");
    ids.push_back(edge_name(literal_node(c[chosen - 1]), c_node(j, chosen, h)));
    for (int k = 1; k <= h; ++k)
      if (k != chosen) ids.push_back(edge_name(c_node(j, k - 1, h), c_node(j, k, h)));
  }
  return branching_from_ids(reduction.instance, ids);
}

std::pair<Cnf, std::vector<bool>> random_satisfiable_cnf(int num_vars, int num_clauses, std::uint64_t seed) {
  if (num_vars < 1 || num_clauses < 0 || 2LL * num_clauses > 3LL * num_vars)
    throw Error(Errc::BadParams, "need 2*clauses <= 3*vars so occurrence bounds can hold");
  Rng rng(seed);
  std::vector<bool> assignment(num_vars);
  for (int i = 0; i < num_vars; ++i) assignment[i] = draw(rng, 2) == 1;
  std::vector<int> budget(num_vars + 1, 3);
  Cnf cnf;
  cnf.num_vars = num_vars;
  for (int j = 0; j < num_clauses; ++j) {
    std::vector<int> free;
    for (int v = 1; v <= num_vars; ++v)
      if (budget[v] > 0) free.push_back(v);
    const int remaining = num_clauses - j;
    int total = 0;
    for (int v = 1; v <= num_vars; ++v) total += budget[v];
    // width 3 only when enough occurrences stay for width-2 clauses after it
    int width = 2 + static_cast<int>(draw(rng, 2));
    if (width == 3 && total - 3 < 2 * (remaining - 1)) width = 2;
    if (free.size() < 2) break;
    std::vector<int> clause;
    shuffle(free, rng);
    std::vector<int> vars(free.begin(), free.begin() + std::min<std::size_t>(width, free.size()));
    if (static_cast<int>(vars.size()) < width) width = static_cast<int>(vars.size());
    for (int v : vars) {
      --budget[v];
      clause.push_back(draw(rng, 2) ? v : -v);
    }
    // plant one true literal
    const int k = static_cast<int>(draw(rng, clause.size()));
    const int v = std::abs(clause[k]);
    clause[k] = assignment[v - 1] ? v : -v;
    cnf.clauses.push_back(std::move(clause));
  }
  return {cnf, assignment};
}

// ---------------------------------------------------------------------------
// Hamiltonian path
// ---------------------------------------------------------------------------

namespace {

std::string core(const HamPathReduction& red, int v, int j) {
  if (v == red.source_root) return std::string(kGadgetRoot);
  return "c_" + red.source.node_id(v) + "_" + num(j);
}
std::string pendant(const HamPathReduction& red, int v, int i, int j) {
  return "p_" + red.source.node_id(v) + "_" + num(i) + "_" + num(j);
}
int wrap(int j, int d) { return (j - 1 + d) % d + 1; }

}  // namespace

HamPathReduction reduce_hampath(const Instance& source) {
  HamPathReduction red;
  red.source = source;
  const int n = source.num_nodes();
  red.in_neighbours.assign(n, {});
  for (int v = 0; v < n; ++v)
    for (int e : source.in_edges(v)) {
      auto& nb = red.in_neighbours[v];
      if (std::find(nb.begin(), nb.end(), source.tail(e)) == nb.end()) nb.push_back(source.tail(e));
    }
  for (int v = 0; v < n && red.source_root < 0; ++v) {
    if (!source.in_edges(v).empty()) continue;
    std::set<int> heads;
    for (int e : source.out_edges(v)) heads.insert(source.head(e));
    if (static_cast<int>(heads.size()) == n - 1) red.source_root = v;
  }
  if (red.source_root < 0) throw Error(Errc::BadInput, "no node with in-degree 0 and an edge to every other node");

  std::vector<std::string> nodes{std::string(kGadgetRoot), std::string(kGadgetRootPrime)};
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> prefs;
  auto add = [&](const std::string& u, const std::string& v) {
    edges.push_back({edge_name(u, v), u, v});
    return edges.back().id;
  };
  prefs[std::string(kGadgetRootPrime)] = ranking({add(std::string(kGadgetRoot), std::string(kGadgetRootPrime))});

  for (int v = 0; v < n; ++v) {
    if (v == red.source_root) continue;
    const auto& nb = red.in_neighbours[v];
    const int d = static_cast<int>(nb.size());
    for (int j = 1; j <= d; ++j) nodes.push_back(core(red, v, j));
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) nodes.push_back(pendant(red, v, i, j));
    // cycles of length 1 would be self-loops and are left out
    for (int j = 1; j <= d; ++j) {
      std::vector<std::string> order;
      if (d > 1) order.push_back(add(core(red, v, wrap(j - 1, d)), core(red, v, j)));
      for (int s = 0; s < d; ++s) order.push_back(add(core(red, nb[wrap(j + s, d) - 1], 1), core(red, v, j)));
      prefs[core(red, v, j)] = ranking(order);
    }
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        std::vector<std::string> order;
        if (d > 1) order.push_back(add(pendant(red, v, i, wrap(j - 1, d)), pendant(red, v, i, j)));
        order.push_back(add(core(red, v, j), pendant(red, v, i, j)));
        prefs[pendant(red, v, i, j)] = ranking(order);
      }
  }
  red.instance = canonical(std::move(nodes), std::move(edges), std::move(prefs));
  return red;
}

Branching hampath_to_branching(const HamPathReduction& red, const std::vector<std::string>& path) {
  const Instance& g = red.source;
  const int n = g.num_nodes();
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  for (const auto& id : path) {
    const auto v = g.find_node(id);
    if (!v) throw Error(Errc::NotAPath, "unknown node " + id);
    if (seen[*v]) throw Error(Errc::NotAPath, "node " + id + " repeated");
    seen[*v] = 1;
    order.push_back(*v);
  }
  if (static_cast<int>(order.size()) != n) throw Error(Errc::NotAPath, "path does not visit every node");
  if (order.front() != red.source_root) throw Error(Errc::NotAPath, "path must start at the root");

  std::vector<std::string> ids{edge_name(std::string(kGadgetRoot), std::string(kGadgetRootPrime))};
  std::map<std::string, int> outdeg;
  auto take = [&](const std::string& u, const std::string& v) {
    ids.push_back(edge_name(u, v));
    ++outdeg[u];
  };
  for (std::size_t s = 1; s < order.size(); ++s) {
    const int u = order[s - 1], v = order[s];
    const auto& nb = red.in_neighbours[v];
    const auto it = std::find(nb.begin(), nb.end(), u);
    if (it == nb.end()) throw Error(Errc::NotAPath, g.node_id(u) + " -> " + g.node_id(v) + " is not an edge");
    const int d = static_cast<int>(nb.size());
    const int entry = static_cast<int>(it - nb.begin()) + 1;
    take(core(red, u, 1), core(red, v, entry));
    for (int j = 1; j <= d; ++j)
      if (j != entry) take(core(red, v, wrap(j - 1, d)), core(red, v, j));
  }
  for (int v = 0; v < n; ++v) {
    if (v == red.source_root) continue;
    const int d = static_cast<int>(red.in_neighbours[v].size());
    int j = 1;
    for (int i = 1; i <= d; ++i) {
      while (outdeg[core(red, v, j)] >= 2) ++j;
      take(core(red, v, j), pendant(red, v, i, j));
      for (int k = 1; k <= d; ++k)
        if (k != j) take(pendant(red, v, i, wrap(k - 1, d)), pendant(red, v, i, k));
    }
  }
  return branching_from_ids(red.instance, ids);
}

std::pair<Instance, std::vector<std::string>> random_hampath_graph(int n, int extra, std::uint64_t seed) {
  if (n < 1 || extra < 0) throw Error(Errc::BadParams, "need n >= 1 and extra >= 0");
  Rng rng(seed);
  std::vector<std::string> nodes{"s"};
  for (int i = 0; i < n; ++i) nodes.push_back(padded(i, n));
  std::vector<std::string> perm(nodes.begin() + 1, nodes.end());
  shuffle(perm, rng);
  std::set<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < n; ++i) pairs.emplace("s", perm[i]);
  for (int i = 1; i < n; ++i) pairs.emplace(perm[i - 1], perm[i]);
  const long long cap = static_cast<long long>(n) * (n - 1);
  for (int k = 0; k < extra && static_cast<long long>(pairs.size()) < cap + n; ++k) {
    const auto u = draw(rng, n), v = draw(rng, n);
    if (u != v) pairs.emplace(nodes[u + 1], nodes[v + 1]);
  }
  std::vector<EdgeSpec> edges;
  for (const auto& [u, v] : pairs) edges.push_back({edge_name(u, v), u, v});
  std::vector<std::string> path{"s"};
  path.insert(path.end(), perm.begin(), perm.end());
  return {canonical(std::move(nodes), std::move(edges), {}), path};
}

// ---------------------------------------------------------------------------
// 3D matching
// ---------------------------------------------------------------------------

TdmInput parse_3dm(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Syntax, e.what());
  }
  TdmInput in;
  try {
    in.x = doc.at("X").get<std::vector<std::string>>();
    in.y = doc.at("Y").get<std::vector<std::string>>();
    in.z = doc.at("Z").get<std::vector<std::string>>();
    for (const auto& t : doc.at("T")) {
      const auto v = t.get<std::vector<std::string>>();
      if (v.size() != 3) throw Error(Errc::Syntax, "triples must have three elements");
      in.triples.push_back({v[0], v[1], v[2]});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Syntax, e.what());
  }
  return in;
}

namespace {

std::string t_edge(std::size_t k, const std::string& x, int copy) {
  return "t" + num(static_cast<int>(k + 1)) + "_" + x + "_" + num(copy);
}

}  // namespace

TdmReduction reduce_3dm(const TdmInput& input) {
  if (input.x.size() != input.y.size() || input.x.size() != input.z.size())
    throw Error(Errc::BadInput, "X, Y and Z must have equal size");
  if (input.x.empty()) throw Error(Errc::BadInput, "X must be nonempty");
  std::map<std::string, int> part;
  const std::vector<std::string>* sets[3] = {&input.x, &input.y, &input.z};
  for (int s = 0; s < 3; ++s)
    for (const auto& e : *sets[s]) {
      if (e.empty()) throw Error(Errc::BadInput, "empty element name");
      if (!part.emplace(e, s).second) throw Error(Errc::BadInput, "element " + e + " appears twice");
    }
  std::set<std::string> covered;
  for (const auto& t : input.triples)
    for (int s = 0; s < 3; ++s) {
      const auto it = part.find(t[s]);
      if (it == part.end() || it->second != s)
        throw Error(Errc::BadInput, "triple element " + t[s] + " is not in the right set");
      covered.insert(t[s]);
    }
  for (const auto& [e, s] : part)
    if (!covered.count(e)) throw Error(Errc::BadInput, "element " + e + " is covered by no triple");

  std::vector<std::string> all;
  for (int s = 0; s < 3; ++s) all.insert(all.end(), sets[s]->begin(), sets[s]->end());
  const std::string root(kRootId);
  std::vector<std::string> nodes{root};
  for (const auto& x : all) {
    nodes.push_back(x + "_l");
    nodes.push_back(x + "_u");
  }
  std::vector<EdgeSpec> edges;
  std::map<std::string, PreferenceSpec> prefs;
  for (const auto& x : all) {
    const std::string xl = x + "_l", xu = x + "_u";
    edges.push_back({"d_" + x + "_1", xu, xl});
    edges.push_back({"d_" + x + "_2", xu, xl});
    edges.push_back({"r_" + x + "_1", root, xl});
    edges.push_back({"r_" + x + "_2", root, xl});
    edges.push_back({"r_" + x + "_3", root, xu});
    auto& pl = prefs[xl];
    pl.kind = PrefKind::Partial;
    pl.dominates = {{"d_" + x + "_1", "r_" + x + "_1"}, {"d_" + x + "_2", "r_" + x + "_2"}};
    auto& pu = prefs[xu];
    pu.kind = PrefKind::Partial;
    for (const auto& other : all) {
      if (other == x) continue;
      const std::string e = edge_name(other + "_u", xu);
      edges.push_back({e, other + "_u", xu});
      pu.dominates.emplace_back(e, "r_" + x + "_3");
    }
  }
  for (std::size_t k = 0; k < input.triples.size(); ++k) {
    const auto& t = input.triples[k];
    for (const auto& x : t) {
      const std::string xl = x + "_l", xu = x + "_u";
      const std::string t1 = t_edge(k, x, 1), t2 = t_edge(k, x, 2);
      edges.push_back({t1, xl, xu});
      edges.push_back({t2, xl, xu});
      auto& pu = prefs[xu];
      for (const auto& other : all) {
        if (other == x) continue;
        const bool in_t = std::find(t.begin(), t.end(), other) != t.end();
        pu.dominates.emplace_back(in_t ? t2 : t1, edge_name(other + "_u", xu));
      }
      pu.dominates.emplace_back(t1, "r_" + x + "_3");
      pu.dominates.emplace_back(t2, "r_" + x + "_3");
    }
  }
  TdmReduction red;
  red.input = input;
  red.rooted = RootedInstance::with_explicit_root(canonical(std::move(nodes), std::move(edges), std::move(prefs)),
                                                  root);
  red.proof_valid = input.x.size() > 3;
  return red;
}

std::pair<Branching, DualCertificate> matching_to_certificate(const TdmReduction& red, const std::vector<int>& matching) {
  const auto& in = red.input;
  if (matching.size() != in.x.size()) throw Error(Errc::BadInput, "matching must contain |X| triples");
  std::set<std::string> used;
  for (int k : matching) {
    if (k < 0 || k >= static_cast<int>(in.triples.size())) throw Error(Errc::BadInput, "triple index out of range");
    for (const auto& x : in.triples[k])
      if (!used.insert(x).second) throw Error(Errc::BadInput, "element " + x + " matched twice");
  }
  const Instance& g = red.rooted.graph();
  std::vector<std::string> ids;
  for (const auto* s : {&in.x, &in.y, &in.z})
    for (const auto& x : *s) ids.push_back("r_" + x + "_1");
  DualCertificate family;
  for (const auto* s : {&in.x, &in.y, &in.z})
    for (const auto& x : *s) family.push_back({*g.find_node(x + "_u")});
  for (int k : matching) {
    NodeSet set;
    for (const auto& w : in.triples[k]) {
      ids.push_back(t_edge(static_cast<std::size_t>(k), w, 1));
      set.push_back(*g.find_node(w + "_l"));
      set.push_back(*g.find_node(w + "_u"));
    }
    std::sort(set.begin(), set.end());
    family.push_back(std::move(set));
  }
  return {branching_from_ids(g, ids), normalize(std::move(family))};
}

}  // namespace popbranch

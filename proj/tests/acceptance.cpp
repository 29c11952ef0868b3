// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "popbranch/arborescence.hpp"
#include "popbranch/factor.hpp"
#include "popbranch/mixed.hpp"
#include "popbranch/oracle.hpp"
#include "popbranch/polytope.hpp"
#include "popbranch/solver.hpp"
#include "support.hpp"

using namespace popbranch;
using namespace popbranch::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

using Clock = std::chrono::steady_clock;

bool run(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (o.ok && secs > limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  std::printf("%s %2d %-28s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  return o.ok;
}

const int kSuite = 500;

TdmInput toy_3dm() {
  TdmInput in;
  in.x = {"x1", "x2", "x3", "x4"};
  in.y = {"y1", "y2", "y3", "y4"};
  in.z = {"z1", "z2", "z3", "z4"};
  in.triples = {{"x1", "y1", "z1"}, {"x2", "y2", "z2"}, {"x3", "y3", "z3"},
                {"x4", "y4", "z4"}, {"x1", "y2", "z3"}, {"x2", "y1", "z4"}};
  return in;
}

Outcome worked_example() {
  Outcome o;
  const auto g = section1();
  if (popular_arborescence(augment_root(g))) o.fail("solver found a popular branching");
  const auto b = by_ids(g, {"(a,b)", "(a,c)", "(c,d)"});
  const auto b1 = by_ids(g, {"(d,c)", "(c,a)", "(a,b)"});
  const auto b2 = by_ids(g, {"(b,a)", "(b,d)", "(d,c)"});
  const auto r = compare_branchings(g, b1, b);
  if (r.for_first != 2 || r.for_second != 1) o.fail("B' vs B is not 2 vs 1");
  if (compare_branchings(g, b2, b1).delta <= 0) o.fail("B'' does not beat B'");
  return o;
}

Outcome soundness() {
  Outcome o;
  for (int seed = 1; seed <= kSuite; ++seed) {
    const auto rooted = augment_root(suite_instance(seed));
    const auto res = popular_arborescence(rooted);
    if (!res) continue;
    if (!is_popular(rooted, res->arborescence).popular) o.fail("seed " + std::to_string(seed) + ": output not popular");
    const auto check = validate_certificate(rooted, res->arborescence, res->certificate);
    if (!check.ok || check.bound != 0) o.fail("seed " + std::to_string(seed) + ": certificate rejected");
  }
  return o;
}

Outcome completeness() {
  Outcome o;
  int none = 0;
  for (int seed = 1; seed <= kSuite; ++seed) {
    const auto g = suite_instance(seed);
    const bool found = popular_arborescence(augment_root(g)).has_value();
    none += !found;
    if (found == brute_popular(g).empty()) o.fail("seed " + std::to_string(seed) + ": existence mismatch");
  }
  if (o.ok) o.detail = "(" + std::to_string(none) + " instances without a popular branching)";
  return o;
}

Outcome min_margin() {
  Outcome o;
  for (int seed = 1; seed <= 300; ++seed) {
    const auto g = suite_instance(seed, true);
    if (min_margin_arborescence(augment_root(g)).margin != brute_min_margin(g).margin)
      o.fail("seed " + std::to_string(seed) + ": margin differs from oracle");
  }
  if (min_margin_arborescence(augment_root(section1())).margin != 1) o.fail("section 1 margin is not 1");
  const auto red = reduce_3dm(toy_3dm());
  const auto [a, family] = matching_to_certificate(red, {0, 1, 2, 3});
  const auto check = validate_certificate(red.rooted, a, family);
  if (!check.ok || check.bound != 8) o.fail("3DM certificate does not give bound 8");
  return o;
}

Outcome duality() {
  Outcome o;
  for (int seed = 1; seed <= 300; ++seed) {
    const auto g = random_costed_graph(seed, 7, 5);
    const auto sol = min_cost_arborescence(g);
    const auto dual = laminar_dual(g);
    const std::string tag = "graph " + std::to_string(seed) + ": ";
    if (dual.total() != sol.cost) o.fail(tag + "dual value differs from primal cost");
    if (sol.cost != brute_min_arborescence(g)) o.fail(tag + "primal not optimal");
    if (!is_laminar(dual.sets)) o.fail(tag + "family not laminar");
    if (first_dual_violation(g, dual) != -1) o.fail(tag + "dual infeasible");
  }
  return o;
}

Outcome factor() {
  Outcome o;
  for (int k = 1; k <= 4; ++k) {
    const auto rooted = augment_root(tight_factor_instance(k));
    const auto res = low_factor_arborescence(rooted);
    const int lg = floor_log2(rooted.num_voters());
    if (res.iterations > lg + 1) o.fail("G" + std::to_string(k) + ": too many iterations");
    if (!check_unpop_factor(rooted, res.arborescence, {lg, 1}).ok) o.fail("G" + std::to_string(k) + ": factor check failed");
  }
  if (!(brute_min_factor(tight_factor_instance(2)).factor == FactorValue{FactorValue::Kind::Finite, 2, 1}))
    o.fail("G2 minimum factor is not 2");
  return o;
}

Outcome polytope() {
  Outcome o;
  for (int seed = 1; seed <= 200; ++seed) {
    const auto g = suite_instance(seed, true);
    const auto rooted = augment_root(g);
    const auto dstar = build_dstar(rooted);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    std::vector<std::int64_t> cost(rooted.graph().num_edges());
    for (int e = 0; e < rooted.graph().num_edges(); ++e) cost[e] = (seed * 13 + e * 7) % 9 - 2;
    std::optional<std::int64_t> best;
    for (const auto& b : enumerate_branchings(g)) {
      const auto a = lift(rooted, b);
      const bool popular = is_popular(rooted, a).popular;
      if (is_popular_structural(rooted, dstar, a) != popular) o.fail(tag + "structural test disagrees");
      if (!popular) continue;
      std::int64_t c = 0;
      for (int e : a.edges()) c += cost[e];
      if (!best || c < *best) best = c;
    }
    const auto res = min_cost_popular_branching(rooted, cost);
    if (res.has_value() != best.has_value() || (res && res->cost != *best)) o.fail(tag + "min-cost mismatch");
  }
  return o;
}

Outcome mixed() {
  Outcome o;
  auto check = [&](const RootedInstance& rooted, const std::string& tag) {
    const auto x = resum(rooted, popular_mixed_branching(rooted));
    if (!separate_membership(rooted, x).ok) o.fail(tag + ": outside the polytope");
    if (!separate_popularity(rooted, x).ok) o.fail(tag + ": not popular");
  };
  for (int seed = 1; seed <= kSuite; ++seed) check(augment_root(suite_instance(seed)), "seed " + std::to_string(seed));
  for (int seed = 1; seed <= 10; ++seed)
    check(augment_root(random_instance(8, 10 + seed, PrefModel::weak(2), seed)), "n=8 seed " + std::to_string(seed));
  const auto rooted = augment_root(section1());
  check(rooted, "section 1");
  MixedBranching uniform;
  for (const std::vector<std::string>& ids :
       {std::vector<std::string>{"(a,b)", "(b,d)", "(d,c)"}, {"(b,a)", "(a,c)", "(c,d)"}, {"(c,d)", "(d,b)", "(b,a)"},
        {"(d,c)", "(c,a)", "(a,b)"}})
    uniform.components.push_back({arb(rooted, ids), mpq_class(1, 4)});
  if (!separate_popularity(rooted, resum(rooted, uniform)).ok) o.fail("uniform mix rejected");
  return o;
}

Outcome gadgets() {
  Outcome o;
  for (int seed = 1; seed <= 20; ++seed) {
    const auto [f, assignment] = random_satisfiable_cnf(3 + seed % 3, 4 + seed % 3, seed);
    const auto red = reduce_3sat(f);
    const auto b = assignment_to_branching(red, assignment);
    const auto rooted = augment_root(red.instance);
    if (!is_popular(rooted, lift(rooted, b)).popular) o.fail("sat seed " + std::to_string(seed) + ": not popular");
    for (int c : descendant_counts(red.instance, b))
      if (c > 9) o.fail("sat seed " + std::to_string(seed) + ": more than 9 descendants");
  }
  for (int seed = 1; seed <= 20; ++seed) {
    const auto [src, path] = random_hampath_graph(3 + seed % 3, seed % 4, seed);
    const auto red = reduce_hampath(src);
    const auto b = hampath_to_branching(red, path);
    const auto rooted = augment_root(red.instance);
    if (!is_popular(rooted, lift(rooted, b)).popular) o.fail("path seed " + std::to_string(seed) + ": not popular");
    for (int d : out_degrees(red.instance, b))
      if (d > 2) o.fail("path seed " + std::to_string(seed) + ": out-degree above 2");
  }
  return o;
}

Outcome performance() {
  const auto rooted = augment_root(random_instance(200, 2000, PrefModel::strict(), 2024));
  popular_arborescence(rooted);
  return {};
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, "worked example", 1, worked_example);
  ok &= run(2, "soundness (500 seeds)", 60, soundness);
  ok &= run(3, "completeness (500 seeds)", 60, completeness);
  ok &= run(4, "min-margin optimality", 60, min_margin);
  ok &= run(5, "arborescence duality", 60, duality);
  ok &= run(6, "factor algorithm", 30, factor);
  ok &= run(7, "polytope agreement", 60, polytope);
  ok &= run(8, "mixed solver", 120, mixed);
  ok &= run(9, "gadget round-trips", 60, gadgets);
  ok &= run(10, "performance smoke", 5, performance);
  return ok ? 0 : 1;
}

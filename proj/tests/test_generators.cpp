#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "popbranch/errors.hpp"
#include "popbranch/generators.hpp"
#include "popbranch/solver.hpp"
#include "support.hpp"

using namespace popbranch;
using namespace popbranch::testing;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::BadInput;
}

// In-neighbours of `head`, best first; assumes a strict ranking.
std::vector<std::string> order_of(const Instance& g, const std::string& head) {
  auto in = g.in_edges(*g.find_node(head));
  std::vector<int> edges(in.begin(), in.end());
  std::sort(edges.begin(), edges.end(), [&](int a, int b) { return g.prefers(a, b); });
  std::vector<std::string> out;
  for (int e : edges) out.push_back(g.node_id(g.tail(e)));
  return out;
}

TdmInput toy_3dm() {
  TdmInput in;
  in.x = {"x1", "x2", "x3", "x4"};
  in.y = {"y1", "y2", "y3", "y4"};
  in.z = {"z1", "z2", "z3", "z4"};
  in.triples = {{"x1", "y1", "z1"}, {"x2", "y2", "z2"}, {"x3", "y3", "z3"},
                {"x4", "y4", "z4"}, {"x1", "y2", "z3"}, {"x2", "y1", "z4"}};
  return in;
}

}  // namespace

TEST(Random, Basics) {
  EXPECT_EQ(random_instance(1, 0, PrefModel::strict(), 5).num_nodes(), 1);
  EXPECT_EQ(code_of([] { random_instance(4, 20, PrefModel::strict(), 1); }), Errc::BadParams);
  EXPECT_TRUE(random_instance(5, 9, PrefModel::weak(2), 7) == random_instance(5, 9, PrefModel::weak(2), 7));
}

TEST(Random, FrozenGolden) {
  std::ifstream in(std::string(POPBRANCH_GOLDEN_DIR) + "/random_6_12_weak2_42.json");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(parse_instance(ss.str()) == random_instance(6, 12, PrefModel::weak(2), 42));
}

TEST(Random, ClassificationWithinModel) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    EXPECT_EQ(random_instance(6, 15, PrefModel::strict(), seed).classification(), PreferenceClass::StrictRanking);
    EXPECT_NE(random_instance(6, 15, PrefModel::weak(3), seed).classification(), PreferenceClass::PartialOrder);
    EXPECT_TRUE(validate(random_instance(6, 15, PrefModel::partial(0.5), seed)).ok());
  }
}

TEST(Tight, Table) {
  const auto g3 = tight_factor_instance(3);
  EXPECT_EQ(g3.num_nodes(), 8);
  EXPECT_EQ(order_of(g3, "v0"), (std::vector<std::string>{"v1", "v2", "v4"}));
  EXPECT_EQ(order_of(g3, "v7"), (std::vector<std::string>{"v6", "v5", "v3"}));
  EXPECT_EQ(order_of(g3, "v5"), (std::vector<std::string>{"v4", "v7", "v1"}));
  for (int v = 0; v < 8; ++v) EXPECT_EQ(g3.in_edges(v).size(), 3u);
  EXPECT_EQ(g3.classification(), PreferenceClass::StrictRanking);
  EXPECT_EQ(code_of([] { tight_factor_instance(0); }), Errc::BadParams);
}

TEST(Tight, K2IsSection1) {
  const auto g2 = tight_factor_instance(2);
  const auto s1 = section1();
  const std::map<std::string, std::string> to_s1 = {{"v0", "a"}, {"v1", "b"}, {"v2", "c"}, {"v3", "d"}};
  ASSERT_EQ(g2.num_edges(), s1.num_edges());
  for (const auto& [v, s] : to_s1) {
    std::vector<std::string> mapped;
    for (const auto& u : order_of(g2, v)) mapped.push_back(to_s1.at(u));
    EXPECT_EQ(mapped, order_of(s1, s)) << v;
  }
}

TEST(CompleteTop, Shape) {
  EXPECT_EQ(complete_top_instance(2).num_edges(), 2);
  EXPECT_EQ(code_of([] { complete_top_instance(1); }), Errc::BadParams);
  const auto rooted = augment_root(complete_top_instance(4));
  const auto cg = build_contraction(rooted);
  ASSERT_EQ(cg.supernodes.size(), 1u);
  EXPECT_EQ(cg.supernodes[0].size(), 4u);
}

TEST(Dimacs, RoundTrip) {
  const auto f = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  EXPECT_EQ(f.num_vars, 3);
  ASSERT_EQ(f.clauses.size(), 2u);
  EXPECT_EQ(f.clauses[1], (std::vector<int>{2, 3, -1}));
  const auto back = parse_dimacs(to_dimacs(f));
  EXPECT_EQ(back.clauses, f.clauses);
  EXPECT_EQ(code_of([] { parse_dimacs("p cnf x 1\n"); }), Errc::Syntax);
}

TEST(Sat, Gadget) {
  Cnf f{2, {{1, 2}, {-1, -2}}};
  const auto red = reduce_3sat(f);
  EXPECT_EQ(red.instance.num_nodes(), 26);
  EXPECT_EQ(red.instance.classification(), PreferenceClass::StrictRanking);
  const auto b = assignment_to_branching(red, {true, false});
  const auto rooted = augment_root(red.instance);
  EXPECT_TRUE(is_popular(rooted, lift(rooted, b)).popular);
  for (int c : descendant_counts(red.instance, b)) EXPECT_LE(c, 9);
  EXPECT_EQ(code_of([&] { assignment_to_branching(red, {true, true}); }), Errc::Unsatisfied);
  EXPECT_EQ(code_of([] { reduce_3sat(Cnf{1, {{1}}}); }), Errc::BadFormula);
  EXPECT_EQ(code_of([] { reduce_3sat(Cnf{2, {{1, 2}, {1, -2}, {-1, 2}, {1, 2}}}); }), Errc::BadFormula);
}

TEST(Sat, RandomRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto [f, assignment] = random_satisfiable_cnf(4, 5, seed);
    const auto red = reduce_3sat(f);
    const auto b = assignment_to_branching(red, assignment);
    const auto rooted = augment_root(red.instance);
    EXPECT_TRUE(is_popular(rooted, lift(rooted, b)).popular) << seed;
  }
}

TEST(HamPath, Gadget) {
  const auto src = parse_instance(R"j({"nodes":["r","v1","v2"],"edges":[{"id":"(r,v1)","tail":"r","head":"v1"},
      {"id":"(v1,v2)","tail":"v1","head":"v2"},{"id":"(r,v2)","tail":"r","head":"v2"}],"preferences":{}})j");
  const auto red = reduce_hampath(src);
  EXPECT_EQ(red.instance.num_nodes(), 1 * 2 + 2 * 3 + 2);
  const auto b = hampath_to_branching(red, {"r", "v1", "v2"});
  const auto rooted = augment_root(red.instance);
  EXPECT_TRUE(is_popular(rooted, lift(rooted, b)).popular);
  for (int d : out_degrees(red.instance, b)) EXPECT_LE(d, 2);
  EXPECT_EQ(code_of([&] { hampath_to_branching(red, {"r", "v2", "v1"}); }), Errc::NotAPath);
  EXPECT_EQ(code_of([] { reduce_hampath(section1()); }), Errc::BadInput);
}

TEST(HamPath, RandomRoundTrips) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto [src, path] = random_hampath_graph(4, 3, seed);
    const auto red = reduce_hampath(src);
    const auto b = hampath_to_branching(red, path);
    const auto rooted = augment_root(red.instance);
    EXPECT_TRUE(is_popular(rooted, lift(rooted, b)).popular) << seed;
    for (int d : out_degrees(red.instance, b)) EXPECT_LE(d, 2);
  }
}

TEST(Tdm, ToyCertificate) {
  const auto red = reduce_3dm(toy_3dm());
  EXPECT_TRUE(red.proof_valid);
  EXPECT_EQ(validate(red.rooted.graph()).classification, PreferenceClass::PartialOrder);
  const auto [a, family] = matching_to_certificate(red, {0, 1, 2, 3});
  EXPECT_EQ(family.size(), 16u);
  const auto check = validate_certificate(red.rooted, a, family);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.bound, 8);
  EXPECT_EQ(code_of([&] { matching_to_certificate(red, {0, 4}); }), Errc::BadInput);
}

TEST(Tdm, BadInput) {
  auto in = toy_3dm();
  in.triples.pop_back();
  in.triples.erase(in.triples.begin() + 3);  // x4 uncovered
  EXPECT_EQ(code_of([&] { reduce_3dm(in); }), Errc::BadInput);
  EXPECT_EQ(code_of([] { parse_3dm("{\"X\": 1}"); }), Errc::Syntax);
}

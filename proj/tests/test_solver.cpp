#include <gtest/gtest.h>

#include "popbranch/errors.hpp"
#include "popbranch/oracle.hpp"
#include "popbranch/solver.hpp"
#include "support.hpp"

using namespace popbranch;
using namespace popbranch::testing;

TEST(SafeEdges, Section1WholeSetIsTopEdges) {
  const auto rooted = augment_root(section1());
  const auto& g = rooted.graph();
  const auto safe = safe_edges(rooted, nodes_of(g, {"a", "b", "c", "d"}));
  auto names = edge_names(g, safe);
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"(a,b)", "(b,a)", "(c,d)", "(d,c)"}));
}

TEST(FixedPoint, Section1) {
  const auto rooted = augment_root(section1());
  const auto& g = rooted.graph();
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("a")), nodes_of(g, {"a", "b"}));
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("b")), nodes_of(g, {"a", "b"}));
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("c")), nodes_of(g, {"c", "d"}));
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("d")), nodes_of(g, {"c", "d"}));
}

TEST(FixedPoint, Star) {
  const auto rooted = augment_root(star());
  const auto& g = rooted.graph();
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("a")), nodes_of(g, {"a", "b", "c"}));
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("b")), nodes_of(g, {"b"}));
  EXPECT_EQ(fixed_point_set(rooted, *g.find_node("c")), nodes_of(g, {"c"}));
}

TEST(Contraction, Section1HasNoSpanningArborescence) {
  const auto rooted = augment_root(section1());
  const auto cg = build_contraction(rooted);
  EXPECT_EQ(cg.supernodes.size(), 2u);
  EXPECT_EQ(cg.dprime.num_nodes, 3);
  EXPECT_FALSE(popular_arborescence(rooted, cg).has_value());
}

TEST(Solve, Star) {
  const auto rooted = augment_root(star());
  const auto& g = rooted.graph();
  const auto res = popular_arborescence(rooted);
  ASSERT_TRUE(res);
  EXPECT_EQ(sorted_ids(g, res->arborescence), (std::vector<std::string>{"(a,b)", "(a,c)", "(r,a)"}));
  EXPECT_EQ(normalize(res->certificate),
            normalize({nodes_of(g, {"a", "b", "c"}), nodes_of(g, {"b"}), nodes_of(g, {"c"})}));
  EXPECT_EQ(res->margin, 0);
}

TEST(Solve, SingleNode) {
  const auto rooted = augment_root(single_node());
  const auto res = popular_arborescence(rooted);
  ASSERT_TRUE(res);
  EXPECT_EQ(sorted_ids(rooted.graph(), res->arborescence), (std::vector<std::string>{"(r,v)"}));
  EXPECT_EQ(res->certificate.size(), 1u);
}

TEST(Solve, Section1HasNone) { EXPECT_FALSE(popular_arborescence(augment_root(section1())).has_value()); }

TEST(Solve, CompleteTop) {
  for (int n = 2; n <= 5; ++n) {
    const auto rooted = augment_root(complete_top_instance(n));
    const auto res = popular_arborescence(rooted);
    ASSERT_TRUE(res) << n;
    EXPECT_TRUE(validate_certificate(rooted, res->arborescence, res->certificate).ok);
    EXPECT_EQ(unpopularity_margin(rooted, res->arborescence).margin, 0);
  }
}

TEST(Solve, AgreesWithOracleOnSmallInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto g = suite_instance(seed);
    const auto rooted = augment_root(g);
    const auto res = popular_arborescence(rooted);
    const bool exists = !brute_popular(g).empty();
    ASSERT_EQ(res.has_value(), exists) << "seed " << seed;
    if (!res) continue;
    EXPECT_EQ(brute_margin(g, project(rooted, res->arborescence)), 0) << "seed " << seed;
    const auto check = validate_certificate(rooted, res->arborescence, res->certificate);
    EXPECT_TRUE(check.ok) << "seed " << seed;
    EXPECT_EQ(check.bound, 0);
  }
}

TEST(MinMargin, Section1IsOne) {
  const auto rooted = augment_root(section1());
  const auto res = min_margin_arborescence(rooted);
  EXPECT_EQ(res.margin, 1);
  EXPECT_EQ(unpopularity_margin(rooted, res.arborescence).margin, 1);
  const auto check = validate_certificate(rooted, res.arborescence, res.certificate);
  EXPECT_TRUE(check.ok);
  EXPECT_EQ(check.bound, 1);
}

TEST(MinMargin, PopularGivesZero) {
  const auto rooted = augment_root(star());
  EXPECT_EQ(min_margin_arborescence(rooted).margin, 0);
}

TEST(MinMargin, RejectsPartialOrders) {
  TdmInput in;
  in.x = {"x"};
  in.y = {"y"};
  in.z = {"z"};
  in.triples = {{"x", "y", "z"}};
  const auto red = reduce_3dm(in);
  try {
    min_margin_arborescence(red.rooted);
    FAIL() << "expected NotWeakRanking";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotWeakRanking);
  }
}

TEST(MinMargin, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto g = suite_instance(seed, true);
    const auto rooted = augment_root(g);
    const auto res = min_margin_arborescence(rooted);
    EXPECT_EQ(res.margin, brute_min_margin(g).margin) << "seed " << seed;
    EXPECT_EQ(res.margin, unpopularity_margin(rooted, res.arborescence).margin) << "seed " << seed;
  }
}

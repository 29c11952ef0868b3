#include <gtest/gtest.h>

#include "popbranch/errors.hpp"
#include "popbranch/mixed.hpp"
#include "popbranch/oracle.hpp"
#include "support.hpp"

using namespace popbranch;
using namespace popbranch::testing;

namespace {

const std::vector<std::vector<std::string>> kUniform = {{"(a,b)", "(b,d)", "(d,c)"},
                                                        {"(b,a)", "(a,c)", "(c,d)"},
                                                        {"(c,d)", "(d,b)", "(b,a)"},
                                                        {"(d,c)", "(c,a)", "(a,b)"}};

MixedBranching uniform_mix(const RootedInstance& rooted) {
  MixedBranching m;
  for (const auto& ids : kUniform) m.components.push_back({arb(rooted, ids), mpq_class(1, 4)});
  return m;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::BadInput;
}

void expect_exact(const RootedInstance& rooted, const MixedBranching& mixed, const FractionalArborescence& x) {
  mpq_class total = 0;
  for (const auto& c : mixed.components) {
    EXPECT_GT(c.weight, 0);
    EXPECT_TRUE(is_arborescence(rooted, c.arborescence));
    total += c.weight;
  }
  EXPECT_EQ(total, 1);
  EXPECT_EQ(resum(rooted, mixed).x, x.x);
}

}  // namespace

TEST(Delta, Examples) {
  const auto rooted = augment_root(section1());
  const auto x = resum(rooted, uniform_mix(rooted));
  EXPECT_EQ(delta_mixed(rooted, x, x), 0);
  const auto b1 = indicator(rooted, arb(rooted, kUniform[0]));
  EXPECT_GE(delta_mixed(rooted, x, b1), 0);
  const auto bp = indicator(rooted, arb(rooted, {"(d,c)", "(c,a)", "(a,b)"}));
  const auto b = indicator(rooted, arb(rooted, {"(a,b)", "(a,c)", "(c,d)"}));
  EXPECT_EQ(delta_mixed(rooted, bp, b), 1);
  EXPECT_EQ(delta_mixed(rooted, b, bp), -1);
}

TEST(Delta, InfeasiblePoint) {
  const auto rooted = augment_root(star());
  FractionalArborescence zero{std::vector<mpq_class>(rooted.graph().num_edges(), 0)};
  const auto a = indicator(rooted, arb(rooted, {"(a,b)", "(a,c)"}));
  EXPECT_EQ(code_of([&] { delta_mixed(rooted, zero, a); }), Errc::InfeasiblePoint);
}

TEST(Delta, MatchesCompareOnIndicators) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto g = suite_instance(seed);
    if (g.num_nodes() > 4) continue;
    const auto rooted = augment_root(g);
    const auto all = enumerate_branchings(g);
    for (const auto& p : all)
      for (const auto& q : all) {
        const auto d = delta_mixed(rooted, indicator(rooted, lift(rooted, p)), indicator(rooted, lift(rooted, q)));
        ASSERT_EQ(d, compare_branchings(g, p, q).delta) << "seed " << seed;
      }
  }
}

TEST(Membership, Examples) {
  const auto rooted = augment_root(section1());
  EXPECT_TRUE(separate_membership(rooted, indicator(rooted, arb(rooted, kUniform[0]))).ok);
  FractionalArborescence zero{std::vector<mpq_class>(rooted.graph().num_edges(), 0)};
  const auto r = separate_membership(rooted, zero);
  EXPECT_FALSE(r.ok);
  EXPECT_GE(r.degree_node, 0);
  MixedBranching half{{{arb(rooted, kUniform[0]), mpq_class(1, 2)}, {arb(rooted, kUniform[1]), mpq_class(1, 2)}}};
  EXPECT_TRUE(separate_membership(rooted, resum(rooted, half)).ok);
}

TEST(Membership, CycleFailsCut) {
  // degree equalities hold but {a,b} is entered by nothing
  const auto rooted = augment_root(section1());
  const auto& g = rooted.graph();
  FractionalArborescence x{std::vector<mpq_class>(g.num_edges(), 0)};
  for (const char* e : {"(a,b)", "(b,a)", "(c,d)", "(d,c)"}) x.x[*g.find_edge(e)] = 1;
  const auto r = separate_membership(rooted, x);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.degree_node, -1);
  ASSERT_TRUE(r.cut);
  EXPECT_TRUE(*r.cut == nodes_of(g, {"a", "b"}) || *r.cut == nodes_of(g, {"c", "d"}) ||
              *r.cut == nodes_of(g, {"a", "b", "c", "d"}));
}

TEST(Popularity, Examples) {
  {
    const auto rooted = augment_root(star());
    EXPECT_TRUE(separate_popularity(rooted, indicator(rooted, arb(rooted, {"(a,b)", "(a,c)"}))).ok);
  }
  {
    const auto rooted = augment_root(section1());
    const auto x = indicator(rooted, arb(rooted, {"(a,b)", "(a,c)", "(c,d)"}));
    const auto r = separate_popularity(rooted, x);
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.witness);
    EXPECT_LE(delta_mixed(rooted, x, indicator(rooted, *r.witness)), -1);
    EXPECT_EQ(r.min_delta, -1);
  }
  {
    const auto rooted = augment_root(section1());
    const auto r = separate_popularity(rooted, resum(rooted, uniform_mix(rooted)));
    EXPECT_TRUE(r.ok);
    EXPECT_GE(r.min_delta, 0);
  }
}

TEST(Solve, Examples) {
  {
    const auto rooted = augment_root(star());
    const auto m = popular_mixed_branching(rooted);
    ASSERT_EQ(m.components.size(), 1u);
    EXPECT_EQ(m.components[0].weight, 1);
    EXPECT_EQ(sorted_ids(rooted.graph(), m.components[0].arborescence),
              (std::vector<std::string>{"(a,b)", "(a,c)", "(r,a)"}));
  }
  {
    const auto rooted = augment_root(single_node());
    const auto m = popular_mixed_branching(rooted);
    ASSERT_EQ(m.components.size(), 1u);
    EXPECT_EQ(m.components[0].weight, 1);
  }
  {
    const auto rooted = augment_root(section1());
    const auto m = popular_mixed_branching(rooted);
    const auto x = resum(rooted, m);
    EXPECT_TRUE(separate_membership(rooted, x).ok);
    EXPECT_TRUE(separate_popularity(rooted, x).ok);
  }
}

TEST(Solve, Budget) {
  const auto rooted = augment_root(random_instance(5, 8, PrefModel::strict(), 1));
  EXPECT_EQ(code_of([&] { popular_mixed_branching(rooted, {4, 5000}); }), Errc::BudgetExceeded);
}

TEST(Solve, RandomSmall) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto rooted = augment_root(suite_instance(seed));
    const auto m = popular_mixed_branching(rooted);
    const auto x = resum(rooted, m);
    EXPECT_TRUE(separate_membership(rooted, x).ok) << seed;
    EXPECT_TRUE(separate_popularity(rooted, x).ok) << seed;
  }
}

TEST(Decompose, Examples) {
  {
    const auto rooted = augment_root(star());
    const auto x = indicator(rooted, arb(rooted, {"(a,b)", "(a,c)"}));
    const auto m = decompose_fractional(rooted, x);
    ASSERT_EQ(m.components.size(), 1u);
    expect_exact(rooted, m, x);
  }
  {
    // star plus (b,c): two arborescences at weight 1/2
    const auto g = parse_instance(R"j({"nodes":["a","b","c"],"edges":[{"id":"(a,b)","tail":"a","head":"b"},
        {"id":"(a,c)","tail":"a","head":"c"},{"id":"(b,c)","tail":"b","head":"c"}],"preferences":{}})j");
    const auto rooted = augment_root(g);
    MixedBranching half{{{arb(rooted, {"(a,b)", "(a,c)"}), mpq_class(1, 2)}, {arb(rooted, {"(a,b)", "(b,c)"}), mpq_class(1, 2)}}};
    const auto x = resum(rooted, half);
    const auto m = decompose_fractional(rooted, x);
    ASSERT_EQ(m.components.size(), 2u);
    for (const auto& c : m.components) EXPECT_EQ(c.weight, mpq_class(1, 2));
    expect_exact(rooted, m, x);
  }
  {
    const auto rooted = augment_root(section1());
    const auto x = resum(rooted, uniform_mix(rooted));
    expect_exact(rooted, decompose_fractional(rooted, x), x);
  }
}

TEST(Decompose, Infeasible) {
  const auto rooted = augment_root(section1());
  const auto& g = rooted.graph();
  FractionalArborescence x{std::vector<mpq_class>(g.num_edges(), 0)};
  for (const char* e : {"(a,b)", "(b,a)", "(c,d)", "(d,c)"}) x.x[*g.find_edge(e)] = 1;
  EXPECT_EQ(code_of([&] { decompose_fractional(rooted, x); }), Errc::InfeasiblePoint);
}

TEST(ToString, Fractions) {
  EXPECT_EQ(to_string(mpq_class(1, 4)), "1/4");
  EXPECT_EQ(to_string(mpq_class(1)), "1/1");
}

#include "support.hpp"

#include <gtest/gtest.h>

using namespace bianchi;
using namespace testsupport;
using T = FiniteGroupType;

namespace {

const T kAll[] = {T::C1, T::C2, T::C3, T::D2, T::D3, T::A4};

bool has_order(T t, int ell) { return group_order(t) % ell == 0; }

// a vertex of type sigma between two edges of type tau on one axis
TorsionGraph path_through(T sigma, T tau, int ell) {
  TorsionGraph g;
  g.ell = ell;
  T end_type = ell == 2 ? T::D2 : T::D3;
  g.vertices = {TorsionVertex{0, end_type, {{TorsionEnd{0, 0}}}},
                TorsionVertex{1, sigma, {{TorsionEnd{0, 1}, TorsionEnd{1, 0}}}},
                TorsionVertex{2, end_type, {{TorsionEnd{1, 1}}}}};
  g.edges = {TorsionEdge{0, tau, {0, 1}, 1, {0}}, TorsionEdge{1, tau, {1, 2}, 1, {1}}};
  return g;
}

}  // namespace

TEST(TorsionOracle, SylowCentreNormaliserTable) {
  for (int ell : {2, 3})
    for (T t : kAll) {
      if (!has_order(t, ell)) {
        EXPECT_THROW(sylow_centre_normaliser(t, ell), std::domain_error);
        continue;
      }
      EXPECT_EQ(sylow_centre_normaliser(t, ell), oracle_sylow_centre_normaliser(t, ell)) << to_string(t) << " " << ell;
      EXPECT_EQ(is_ell_normal(t, ell), oracle_ell_normal(t, ell)) << to_string(t) << " " << ell;
    }
}

TEST(TorsionOracle, ConditionBAgreesWithMultiplicationTables) {
  for (int ell : {2, 3})
    for (T sigma : kAll) {
      if (!has_order(sigma, ell)) continue;
      for (T tau : kAll) {
        if (!has_order(tau, ell)) continue;
        EXPECT_EQ(merge_allowed(sigma, tau, ell), oracle_merge(sigma, tau, ell))
            << to_string(sigma) << " " << to_string(tau) << " " << ell;
        // reduce takes the same decision on a three-vertex path
        TorsionGraph red = reduce(path_through(sigma, tau, ell));
        EXPECT_EQ(red.edges.size() == 1, oracle_merge(sigma, tau, ell)) << to_string(sigma) << " " << to_string(tau);
      }
    }
}

TEST(TorsionReduce, SpecExamples) {
  // C2 vertex between two C2 edges merges
  TorsionGraph g = reduce(path_through(T::C2, T::C2, 2));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].weight, 2);
  EXPECT_EQ(g.edges[0].orbits, (std::vector<int>{0, 1}));
  // D2 vertex between two C2 edges: decided by the table, no merge
  EXPECT_EQ(reduce(path_through(T::D2, T::C2, 2)).edges.size(), 2u);
  // a vertex on three torsion edges never merges
  TorsionGraph star;
  star.ell = 2;
  star.vertices = {TorsionVertex{0, T::C2, {{TorsionEnd{0, 0}, TorsionEnd{1, 0}}, {TorsionEnd{2, 0}}}},
                   TorsionVertex{1, T::D2, {{TorsionEnd{0, 1}}}}, TorsionVertex{2, T::D2, {{TorsionEnd{1, 1}}}},
                   TorsionVertex{3, T::D2, {{TorsionEnd{2, 1}}}}};
  star.edges = {TorsionEdge{0, T::C2, {0, 1}, 1, {0}}, TorsionEdge{1, T::C2, {0, 2}, 1, {1}},
                TorsionEdge{2, T::C2, {0, 3}, 1, {2}}};
  EXPECT_EQ(reduce(star), star);
  // edges of different types never merge (Condition A)
  TorsionGraph mixed = path_through(T::C2, T::C2, 2);
  mixed.edges[1].type = T::D2;
  EXPECT_EQ(reduce(mixed).edges.size(), 2u);
}

TEST(TorsionReduce, RandomSyntheticGraphs) {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 100; ++i) {
    int ell = i % 2 == 0 ? 2 : 3;
    SyntheticGraph s = synthetic_graph(rng, ell);
    ASSERT_NO_THROW(check_shape(s.graph));
    auto before = components(s.graph);
    ASSERT_TRUE(matches(before, s.expected)) << "graph " << i;
    TorsionGraph red = reduce(s.graph);
    EXPECT_EQ(reduce(red), red) << "graph " << i;
    EXPECT_TRUE(matches(components(red), s.expected)) << "graph " << i;
    // nothing mergeable is left
    for (const auto& v : red.vertices) {
      if (v.classes.size() != 1 || v.end_count() != 2) continue;
      const auto& c = v.classes[0];
      const TorsionEdge& a = red.edges[c[0].edge];
      const TorsionEdge& b = red.edges[c[1].edge];
      if (c[0].edge == c[1].edge || a.type != b.type) continue;
      EXPECT_FALSE(oracle_merge(v.type, a.type, ell)) << "graph " << i;
    }
  }
}

TEST(TorsionExtract, HigherPrimesAndNonPrimes) {
  const EquivComplex& ec = *report_for(2).complex;
  TorsionGraph g5 = extract(ec, 5);
  EXPECT_TRUE(g5.vertices.empty());
  EXPECT_TRUE(g5.edges.empty());
  EXPECT_THROW(extract(ec, 4), std::domain_error);
  EXPECT_THROW(extract(ec, 1), std::domain_error);
}

class RealTorsion : public ::testing::TestWithParam<long> {};

TEST_P(RealTorsion, CellsCarryEllTorsion) {
  const OrbReport& rep = report_for(GetParam());
  for (const TorsionData* t : {&rep.two, &rep.three}) {
    for (const auto& v : t->graph.vertices) EXPECT_TRUE(has_order(v.type, t->graph.ell));
    for (const auto& e : t->graph.edges) {
      EXPECT_TRUE(has_order(e.type, t->graph.ell));
      EXPECT_EQ(e.type, t->graph.ell == 2 ? T::C2 : T::C3);  // edge stabilisers are cyclic
    }
  }
}

TEST_P(RealTorsion, ReduceIsIdempotentAndPreservesComponents) {
  const OrbReport& rep = report_for(GetParam());
  for (const TorsionData* t : {&rep.two, &rep.three}) {
    EXPECT_EQ(reduce(t->reduced), t->reduced);
    auto before = components(t->graph);
    ASSERT_EQ(before.size(), t->components.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      EXPECT_EQ(before[i].type, t->components[i].type);
      EXPECT_EQ(before[i].edge_count, t->components[i].edge_count);
      EXPECT_EQ(before[i].edge_orbits, t->components[i].edge_orbits);
    }
  }
}

TEST_P(RealTorsion, EdgeEndpointsAdmitTheReflection) {
  const OrbReport& rep = report_for(GetParam());
  for (const TorsionData* t : {&rep.two, &rep.three})
    for (const auto& c : t->components) {
      if (c.type == ComponentType::Circle) {
        EXPECT_TRUE(c.endpoint_types.empty());
        continue;
      }
      ASSERT_EQ(c.endpoint_types.size(), 2u);
      for (T e : c.endpoint_types) {
        if (t->graph.ell == 2) EXPECT_TRUE(e == T::D2 || e == T::A4) << to_string(e);
        else EXPECT_EQ(e, T::D3);
      }
    }
}

TEST_P(RealTorsion, LambdaStarBounded) {
  const LambdaCounts& l = report_for(GetParam()).lambda;
  EXPECT_LE(0, l.lambda4_star);
  EXPECT_LE(l.lambda4_star, l.lambda4);
  EXPECT_LE(0, l.lambda6_star);
  EXPECT_LE(l.lambda6_star, l.lambda6);
}

INSTANTIATE_TEST_SUITE_P(SmallM, RealTorsion, ::testing::Values(2L, 5L, 6L, 7L, 11L, 13L, 19L));

TEST(TorsionPaper, LambdaCounts) {
  EXPECT_EQ(report_for(2).lambda, (LambdaCounts{2, 2, 1, 0}));
  EXPECT_EQ(report_for(11).lambda, (LambdaCounts{1, 1, 1, 0}));
}

TEST(TorsionPaper, ComponentTypes) {
  const OrbReport& two = report_for(2);
  ASSERT_EQ(two.two.components.size(), 2u);
  for (const auto& c : two.two.components) EXPECT_EQ(c.type, ComponentType::Edge);
  const OrbReport& eleven = report_for(11);
  ASSERT_EQ(eleven.two.components.size(), 1u);
  EXPECT_EQ(eleven.two.components[0].type, ComponentType::Edge);
  ASSERT_EQ(eleven.three.components.size(), 1u);
  EXPECT_EQ(eleven.three.components[0].type, ComponentType::Circle);
}

TEST(TorsionLambda, RejectsMixedPrimes) {
  TorsionComponent c;
  c.ell = 3;
  EXPECT_THROW(lambda_counts({c}, {}), std::invalid_argument);
}

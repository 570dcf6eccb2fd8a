#include "bianchi/dioph.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bianchi;
using testsupport::report_for;

namespace {

MoebiusElt random_element(std::mt19937& rng, const RingBasis& r, int length) {
  std::uniform_int_distribution<long> c(-2, 2);
  MoebiusElt s(RingElem(r, 0), RingElem(r, -1), RingElem(r, 1), RingElem(r, 0));
  MoebiusElt g = MoebiusElt::identity(r);
  for (int i = 0; i < length; ++i) g = g * MoebiusElt::translation(RingElem(r, c(rng), c(rng))) * s;
  return g;
}

MoebiusElt power(const MoebiusElt& g, int k) {
  MoebiusElt x = MoebiusElt::identity(g.basis());
  for (int i = 0; i < k; ++i) x = x * g;
  return x;
}

// all stabiliser groups of the refined complexes of the small examples
std::vector<FiniteSubgroup> stabilisers() {
  std::vector<FiniteSubgroup> out;
  for (long m : {2L, 7L, 11L}) {
    const EquivComplex& ec = *report_for(m).complex;
    for (int d = 0; d <= 2; ++d)
      for (const auto& c : ec.cells(d)) out.push_back(c.stabiliser);
  }
  return out;
}

const FiniteSubgroup& find_type(const std::vector<FiniteSubgroup>& gs, FiniteGroupType t) {
  for (const auto& g : gs)
    if (g.type == t) return g;
  throw std::logic_error("type not present: " + to_string(t));
}

}  // namespace

TEST(Moebius, DeterminantAndCanonicalSign) {
  std::mt19937 rng(3);
  for (long m : {2L, 7L, 11L}) {
    RingBasis r = RingBasis::for_m(m);
    for (int i = 0; i < 100; ++i) {
      MoebiusElt g = random_element(rng, r, 4), h = random_element(rng, r, 3);
      MoebiusElt gh = g * h;
      EXPECT_EQ(gh.a() * gh.d() - gh.b() * gh.c(), RingElem(r, 1));
      EXPECT_EQ(MoebiusElt(-g.a(), -g.b(), -g.c(), -g.d()), g);
      EXPECT_EQ(MoebiusElt(g.a(), g.b(), g.c(), g.d()), g);
      EXPECT_TRUE((g * g.inverse()).is_identity());
      EXPECT_EQ((g * h) * g, g * (h * g));
    }
  }
}

TEST(Moebius, ApplyIsAGroupAction) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> c(-6, 6), d(1, 5);
  for (long m : {2L, 11L}) {
    RingBasis r = RingBasis::for_m(m);
    for (int i = 0; i < 100; ++i) {
      MoebiusElt g = random_element(rng, r, 2), h = random_element(rng, r, 2);
      UhsPoint p = make_point(QuadElem(r, make_rational(c(rng), d(rng)), make_rational(c(rng), d(rng))),
                              make_rational(d(rng), d(rng)));
      EXPECT_EQ(apply(g * h, p), apply(g, apply(h, p)));
      EXPECT_EQ(apply(g.inverse(), apply(g, p)), p);
    }
  }
}

TEST(Moebius, ElementOrderMatchesExplicitPowering) {
  int checked = 0;
  for (const auto& G : stabilisers())
    for (const auto& g : G.elements) {
      int k = element_order(g);
      ASSERT_GE(k, 1);
      ASSERT_LE(k, 3);
      EXPECT_TRUE(power(g, k).is_identity());
      for (int j = 1; j < k; ++j) EXPECT_FALSE(power(g, j).is_identity());
      ++checked;
    }
  EXPECT_GT(checked, 50);
  RingBasis r = RingBasis::for_m(2);
  EXPECT_EQ(element_order(MoebiusElt::translation(RingElem(r, 1))), kInfiniteOrder);
  EXPECT_EQ(element_order(standard_beta(r)), 3);
  EXPECT_EQ(element_order(standard_gamma(r)), 2);
  EXPECT_EQ(element_order(alpha_for_m2(r)), 2);
}

// The type tag against invariants of the multiplication table: order,
// closure, element-order histogram and commutativity determine the six types.
TEST(Moebius, SubgroupTypesMatchMultiplicationTable) {
  std::set<FiniteGroupType> seen;
  for (const auto& G : stabilisers()) {
    const auto& el = G.elements;
    ASSERT_TRUE(std::is_sorted(el.begin(), el.end()));
    for (const auto& x : el)
      for (const auto& y : el) ASSERT_TRUE(G.contains(x * y));
    std::map<int, int> orders;
    bool abelian = true;
    for (const auto& x : el) {
      int k = 1;
      for (MoebiusElt p = x; !p.is_identity(); p = p * x) ++k;
      ++orders[k];
      for (const auto& y : el)
        if (!(x * y == y * x)) abelian = false;
    }
    using T = FiniteGroupType;
    std::map<T, std::map<int, int>> want{{T::C1, {{1, 1}}},
                                         {T::C2, {{1, 1}, {2, 1}}},
                                         {T::C3, {{1, 1}, {3, 2}}},
                                         {T::D2, {{1, 1}, {2, 3}}},
                                         {T::D3, {{1, 1}, {2, 3}, {3, 2}}},
                                         {T::A4, {{1, 1}, {2, 3}, {3, 8}}}};
    EXPECT_EQ(orders, want.at(G.type)) << to_string(G.type);
    EXPECT_EQ(abelian, G.type != T::D3 && G.type != T::A4);
    EXPECT_EQ(static_cast<int>(el.size()), group_order(G.type));
    seen.insert(G.type);
  }
  // m = 2, 7 and 11 together exhibit all six types
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Moebius, ConjugacyClassesInFiniteGroups) {
  auto gs = stabilisers();
  auto classes_by_order = [](const FiniteSubgroup& G) {
    std::map<int, int> n;
    for (const auto& c : conjugacy_in_finite(G)) ++n[element_order(c.front())];
    return n;
  };
  // D3: one class of order 2, one of order 3
  EXPECT_EQ(classes_by_order(find_type(gs, FiniteGroupType::D3)), (std::map<int, int>{{1, 1}, {2, 1}, {3, 1}}));
  // A4: order-3 elements split in two classes
  EXPECT_EQ(classes_by_order(find_type(gs, FiniteGroupType::A4)), (std::map<int, int>{{1, 1}, {2, 1}, {3, 2}}));
  // C2: singletons
  for (const auto& c : conjugacy_in_finite(find_type(gs, FiniteGroupType::C2))) EXPECT_EQ(c.size(), 1u);
}

TEST(Moebius, ClassificationRejectsInfiniteClosure) {
  RingBasis r = RingBasis::for_m(2);
  EXPECT_THROW(classify_subgroup({MoebiusElt::translation(RingElem(r, 1))}, r), std::exception);
  EXPECT_THROW(classify_subgroup({standard_beta(r), standard_gamma(r)}, r), std::exception);
}

TEST(Moebius, FixedAxisIsFixedPointwise) {
  for (long m : {2L, 11L, 7L}) {
    RingBasis r = RingBasis::for_m(m);
    for (const auto& g : {standard_beta(r), standard_gamma(r)}) {
      Geodesic ax = fixed_axis(g);
      for (long s = -3; s <= 3; ++s) {
        Rational t = make_rational(s, 4);
        if (ax.radius_sq - t * t * ax.dir.norm() <= 0) continue;
        UhsPoint p = ax.at(t);
        EXPECT_TRUE(fixes(g, p));
        EXPECT_TRUE(ax.contains(p));
      }
    }
  }
}

#include "support.hpp"

#include <gtest/gtest.h>

using namespace bianchi;
using testsupport::point;
using testsupport::q;
using testsupport::report_for;

namespace {

// Every hemisphere of norm up to `bound` whose centre is within one lattice
// cell of the fundamental rectangle.
std::vector<Hemisphere> nearby_hemispheres(const RingBasis& r, std::int64_t bound) {
  std::vector<Hemisphere> out;
  for (const auto& h : enumerate_hemispheres(r, bound))
    for (std::int64_t a = -1; a <= 1; ++a)
      for (std::int64_t b = -1; b <= 1; ++b) out.push_back(h.translated(Shift{a, b}));
  return out;
}

}  // namespace

class SwanFloor : public ::testing::TestWithParam<long> {};

TEST_P(SwanFloor, NoHemisphereCoversAFloorVertex) {
  const FloorComplex& fc = *report_for(GetParam()).floor;
  auto hs = nearby_hemispheres(fc.basis, 4 * fc.norm_bound + 20);
  for (const auto& v : fc.vertices) {
    if (v.is_cusp()) continue;
    for (const auto& h : hs) EXPECT_FALSE(h.covers(v)) << to_string(v);
  }
}

TEST_P(SwanFloor, StableUnderTwoNormIncrements) {
  RingBasis r = RingBasis::for_m(GetParam());
  FloorComplex fc = compute_floor(r);
  ASSERT_EQ(fc.witness_bounds, (std::vector<std::int64_t>{fc.norm_bound + 1, fc.norm_bound + 2}));
  for (std::int64_t b : fc.witness_bounds) {
    FloorAttempt att = floor_at_bound(r, b, 10000);
    EXPECT_TRUE(att.covered);
    EXPECT_EQ(att.violating_norm, 0);
    EXPECT_TRUE(att.floor.same_cells(fc));
  }
}

TEST_P(SwanFloor, PairingsHaveDeterminantOneAndMatchFaces) {
  const FloorComplex& fc = *report_for(GetParam()).floor;
  const RingBasis& r = fc.basis;
  auto pairings = side_pairings(fc);
  EXPECT_EQ(pairings.size(), fc.faces.size());
  for (const auto& sp : pairings) {
    const MoebiusElt& g = sp.g;
    EXPECT_EQ(g.a() * g.d() - g.b() * g.c(), RingElem(r, 1));
    EXPECT_FALSE(g.is_identity());
    std::set<UhsPoint> image, target;
    for (const auto& v : fc.faces[sp.face].cycle) image.insert(apply(g, fc.point(v)));
    for (const auto& v : fc.faces[sp.image].cycle) target.insert(fc.point(v.shifted(sp.image_shift)));
    EXPECT_EQ(image, target);
  }
}

TEST_P(SwanFloor, EveryEdgeBoundsAFace) {
  const FloorComplex& fc = *report_for(GetParam()).floor;
  for (const auto& e : fc.edges) {
    int count = 0;
    for (const auto& f : fc.faces)
      for (std::size_t i = 0; i < f.cycle.size(); ++i) {
        const VRef& p = f.cycle[i];
        const VRef& nx = f.cycle[(i + 1) % f.cycle.size()];
        if (canonical_edge(p, nx).key == e.ends) ++count;
      }
    EXPECT_GE(count, 1);
  }
}

TEST_P(SwanFloor, HemisphereDataConsistent) {
  const FloorComplex& fc = *report_for(GetParam()).floor;
  for (const auto& h : fc.hemispheres) {
    EXPECT_GT(h.mu.norm(), 0);
    EXPECT_EQ(h.rsq, make_rational(Integer(1), h.mu.norm()));
    EXPECT_EQ(h.center, to_field(h.lambda) / to_field(h.mu));
  }
}

INSTANTIATE_TEST_SUITE_P(SmallM, SwanFloor, ::testing::Values(2L, 5L, 6L, 7L, 11L, 19L));

// Published vertex coordinates, compared modulo the translation lattice.
TEST(SwanFloorPaper, VerticesForMTwo) {
  const OrbReport& rep = report_for(2);
  const RingBasis& r = rep.floor->basis;
  const EquivComplex& ec = *rep.complex;
  for (const auto& p : {point(r, q(0), q(0), q(1)), point(r, q(0), q(1), q(1)), point(r, q(0), q(1, 2), q(1, 2)),
                        point(r, q(1, 2), q(0), q(3, 4)), point(r, q(1, 2), q(1), q(3, 4)),
                        point(r, q(1, 2), q(1, 2), q(1, 4))})
    EXPECT_TRUE(testsupport::contains_point(ec, p)) << to_string(p);
}

TEST(SwanFloorPaper, VerticesForMEleven) {
  const OrbReport& rep = report_for(11);
  const RingBasis& r = rep.floor->basis;
  const EquivComplex& ec = *rep.complex;
  for (const auto& p : {point(r, q(0), q(0), q(1)), point(r, q(1), q(1), q(1)), point(r, q(1, 2), q(0), q(3, 4)),
                        point(r, q(1, 2), q(1), q(3, 4)), point(r, q(8, 11), q(5, 11), q(2, 11))})
    EXPECT_TRUE(testsupport::contains_point(ec, p)) << to_string(p);
}

// The printed vertex 3/11 + 3/11 w at height sqrt(2/11) is not on the unit
// hemisphere; the floor vertex there is 3/11 + 6/11 w = 1 + w - (9).
TEST(SwanFloorPaper, MElevenVertexEightIsThreeEleventhsPlusSixEleventhsOmega) {
  const OrbReport& rep = report_for(11);
  const RingBasis& r = rep.floor->basis;
  UhsPoint printed = point(r, q(3, 11), q(3, 11), q(2, 11));
  UhsPoint computed = point(r, q(3, 11), q(6, 11), q(2, 11));
  Hemisphere unit = Hemisphere::make(RingElem(r, 1), RingElem(r, 0));
  EXPECT_FALSE(unit.contains(printed));
  EXPECT_TRUE(unit.contains(computed));
  EXPECT_FALSE(testsupport::contains_point(*rep.complex, printed));
  EXPECT_TRUE(testsupport::contains_point(*rep.complex, computed));
}

TEST(SwanFloorPaper, ClassNumberOneHasNoFiniteCusps) {
  for (long m : {2L, 11L}) EXPECT_TRUE(report_for(m).floor->cusps.empty()) << m;
}

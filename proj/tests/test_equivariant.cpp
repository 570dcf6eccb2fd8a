#include "support.hpp"

#include <gtest/gtest.h>

using namespace bianchi;
using testsupport::report_for;

namespace {

// Dense rank over Q by Gaussian elimination.
int dense_rank(const SparseMatrix& a) {
  std::vector<std::vector<Rational>> m(a.rows, std::vector<Rational>(a.cols, Rational(0)));
  for (int c = 0; c < a.cols; ++c)
    for (const auto& [r, v] : a.columns[c]) m[r][c] += v;
  int rank = 0;
  for (int c = 0; c < a.cols && rank < a.rows; ++c) {
    int piv = -1;
    for (int r = rank; r < a.rows; ++r)
      if (m[r][c] != 0) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < a.rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < a.cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

class Refined : public ::testing::TestWithParam<long> {};

TEST_P(Refined, StabilisersFixTheirCellsPointwise) {
  const EquivComplex& ec = *report_for(GetParam()).complex;
  for (int d = 0; d <= 2; ++d)
    for (const auto& c : ec.cells(d)) {
      EXPECT_TRUE(c.pointwise_fixed);
      for (const auto& g : c.stabiliser.elements)
        for (const auto& v : c.verts) EXPECT_TRUE(fixes(g, ec.point(v)));
    }
}

TEST_P(Refined, NoCellIsMovedOntoItself) {
  const EquivComplex& ec = *report_for(GetParam()).complex;
  for (int d = 0; d <= 2; ++d)
    for (int i = 0; i < static_cast<int>(ec.cells(d).size()); ++i) {
      if (d == 0 && ec.vertices[i].cusp) continue;
      EXPECT_EQ(setwise_stabiliser(ec, d, i).elements, ec.cells(d)[i].stabiliser.elements) << d << " " << i;
    }
}

TEST_P(Refined, FacesHaveTrivialStabiliser) {
  for (const auto& f : report_for(GetParam()).complex->faces) EXPECT_EQ(f.stabiliser.type, FiniteGroupType::C1);
}

TEST_P(Refined, OrbitsPartitionTheCells) {
  const EquivComplex& ec = *report_for(GetParam()).complex;
  for (int d = 0; d <= 2; ++d) {
    std::vector<int> seen(ec.cells(d).size(), 0);
    ASSERT_EQ(ec.orbit_members[d].size(), ec.orbit_reps[d].size());
    for (int o = 0; o < ec.orbit_count(d); ++o) {
      EXPECT_EQ(ec.cells(d)[ec.orbit_reps[d][o]].orbit, o);
      for (int i : ec.orbit_members[d][o]) {
        ++seen[i];
        EXPECT_EQ(ec.cells(d)[i].orbit, o);
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
  // vertex orbit members are Gamma-equivalent to the representative
  for (int o = 0; o < ec.orbit_count(0); ++o) {
    const UhsPoint& p = ec.points[ec.orbit_reps[0][o]];
    for (int i : ec.orbit_members[0][o]) {
      if (ec.vertices[i].cusp) continue;
      auto g = ec.transporter->between(ec.points[i], p);
      ASSERT_FALSE(g.empty());
      EXPECT_EQ(apply(g.front(), ec.points[i]), p);
    }
  }
}

TEST_P(Refined, BoundaryOfBoundaryVanishes) {
  const QuotientComplex& qc = *report_for(GetParam()).quotient;
  ASSERT_EQ(qc.d1.cols, qc.d2.rows);
  for (int c = 0; c < qc.d2.cols; ++c) {
    std::map<int, long> acc;
    for (const auto& [e, x] : qc.d2.columns[c])
      for (const auto& [v, y] : qc.d1.columns[e]) acc[v] += static_cast<long>(x) * y;
    for (const auto& [v, s] : acc) EXPECT_EQ(s, 0) << "face " << c << " vertex " << v;
  }
}

TEST_P(Refined, RankNullityAudit) {
  const OrbReport& rep = report_for(GetParam());
  const QuotientComplex& qc = *rep.quotient;
  int r1 = dense_rank(qc.d1), r2 = dense_rank(qc.d2);
  EXPECT_EQ(r1, rational_rank(qc.d1));
  EXPECT_EQ(r2, rational_rank(qc.d2));
  EXPECT_EQ(rep.betti[0], qc.cell_count[0] - r1);
  EXPECT_EQ(rep.betti[1], qc.cell_count[1] - r1 - r2);
  EXPECT_EQ(rep.betti[2], qc.cell_count[2] - r2);
}

INSTANTIATE_TEST_SUITE_P(SmallM, Refined, ::testing::Values(2L, 5L, 7L, 11L));

// homotopy equivalent to a circle
TEST(QuotientPaper, BettiNumbersOfCircle) {
  for (long m : {2L, 11L}) EXPECT_EQ(report_for(m).betti, (std::array<int, 3>{1, 1, 0})) << m;
}

TEST(QuotientPaper, QuotientIsConnected) {
  for (long m : {5L, 6L, 7L, 19L}) EXPECT_EQ(report_for(m).betti[0], 1) << m;
}

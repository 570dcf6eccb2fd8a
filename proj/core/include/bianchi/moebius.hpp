#pragma once

#include "bianchi/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bianchi {

// Element of PSL_2(O); the sign is fixed so that the first non-zero
// coordinate of (a, b, c, d) is positive.
class MoebiusElt {
 public:
  MoebiusElt() = default;
  MoebiusElt(RingElem a, RingElem b, RingElem c, RingElem d);

  static MoebiusElt identity(const RingBasis& r);
  static MoebiusElt translation(const RingElem& t);
  static MoebiusElt translation(const RingBasis& r, const Shift& s);

  const RingElem& a() const { return a_; }
  const RingElem& b() const { return b_; }
  const RingElem& c() const { return c_; }
  const RingElem& d() const { return d_; }
  const RingBasis& basis() const { return a_.basis; }

  MoebiusElt operator*(const MoebiusElt& o) const;
  MoebiusElt inverse() const;
  // trace up to sign, normalised like the matrix itself
  RingElem trace() const { return a_ + d_; }
  bool is_identity() const;

  bool operator==(const MoebiusElt& o) const = default;
  std::strong_ordering operator<=>(const MoebiusElt& o) const;

 private:
  RingElem a_, b_, c_, d_;
};

std::string to_string(const MoebiusElt& g);

UhsPoint apply(const MoebiusElt& g, const UhsPoint& p);
// action on the sphere at infinity; nullopt stands for the point infinity
std::optional<QuadElem> apply_boundary(const MoebiusElt& g, const QuadElem& z);
bool fixes(const MoebiusElt& g, const UhsPoint& p);

constexpr int kInfiniteOrder = 0;
// 1, 2, 3 or kInfiniteOrder
int element_order(const MoebiusElt& g);

enum class FiniteGroupType { C1, C2, C3, D2, D3, A4 };
std::string to_string(FiniteGroupType t);
FiniteGroupType parse_group_type(const std::string& s);
int group_order(FiniteGroupType t);

struct FiniteSubgroup {
  FiniteGroupType type = FiniteGroupType::C1;
  std::vector<MoebiusElt> elements;  // sorted, contains the identity

  bool contains(const MoebiusElt& g) const;
  std::vector<MoebiusElt> elements_of_order(int k) const;
};

// Closure of the generators; throws if it exceeds 12 elements or is not one of
// the six finite subgroups of PSL_2(C) that occur here.
FiniteSubgroup classify_subgroup(const std::vector<MoebiusElt>& gens, const RingBasis& r);
FiniteSubgroup subgroup_from_elements(std::vector<MoebiusElt> elements, const RingBasis& r);
FiniteGroupType normaliser_type(const FiniteSubgroup& g, const FiniteSubgroup& h);
std::vector<std::vector<MoebiusElt>> conjugacy_in_finite(const FiniteSubgroup& g);
FiniteSubgroup intersect(const FiniteSubgroup& g, const FiniteSubgroup& h);

// Geodesic with endpoints center +- dir * (radius/|dir|) on the boundary:
// its points are z = center + s*dir, r^2 = radius_sq - s^2 N(dir).
struct Geodesic {
  QuadElem center;
  QuadElem dir;
  Rational radius_sq;

  bool contains(const UhsPoint& p) const;
  // parameter s of a point on the geodesic
  Rational parameter(const UhsPoint& p) const;
  UhsPoint at(const Rational& s) const;
};

// Rotation axis of an elliptic element of order 2 or 3.
Geodesic fixed_axis(const MoebiusElt& g);

}  // namespace bianchi

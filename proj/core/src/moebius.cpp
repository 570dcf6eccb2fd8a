#include "bianchi/moebius.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bianchi {

namespace {

int sign_of_first(const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d) {
  for (const RingElem* x : {&a, &b, &c, &d}) {
    if (x->a != 0) return sgn(x->a);
    if (x->b != 0) return sgn(x->b);
  }
  return 0;
}

}  // namespace

MoebiusElt::MoebiusElt(RingElem a, RingElem b, RingElem c, RingElem d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  RingElem det = a_ * d_ - b_ * c_;
  if (!(det == RingElem(a_.basis, 1, 0)))
    throw std::invalid_argument("matrix has determinant " + to_string(det) + ", expected 1");
  if (sign_of_first(a_, b_, c_, d_) < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

MoebiusElt MoebiusElt::identity(const RingBasis& r) {
  return MoebiusElt(RingElem(r, 1), RingElem(r, 0), RingElem(r, 0), RingElem(r, 1));
}

MoebiusElt MoebiusElt::translation(const RingElem& t) {
  const RingBasis& r = t.basis;
  return MoebiusElt(RingElem(r, 1), t, RingElem(r, 0), RingElem(r, 1));
}

MoebiusElt MoebiusElt::translation(const RingBasis& r, const Shift& s) { return translation(shift_elem(r, s)); }

MoebiusElt MoebiusElt::operator*(const MoebiusElt& o) const {
  return MoebiusElt(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_, c_ * o.b_ + d_ * o.d_);
}

MoebiusElt MoebiusElt::inverse() const { return MoebiusElt(d_, -b_, -c_, a_); }

bool MoebiusElt::is_identity() const {
  return b_.is_zero() && c_.is_zero() && a_ == RingElem(basis(), 1) && d_ == RingElem(basis(), 1);
}

std::strong_ordering MoebiusElt::operator<=>(const MoebiusElt& o) const {
  if (auto c = a_ <=> o.a_; c != 0) return c;
  if (auto c = b_ <=> o.b_; c != 0) return c;
  if (auto c = c_ <=> o.c_; c != 0) return c;
  return d_ <=> o.d_;
}

std::string to_string(const MoebiusElt& g) {
  return "[[" + to_string(g.a()) + ", " + to_string(g.b()) + "], [" + to_string(g.c()) + ", " + to_string(g.d()) + "]]";
}

UhsPoint apply(const MoebiusElt& g, const UhsPoint& p) {
  QuadElem a = to_field(g.a()), b = to_field(g.b()), c = to_field(g.c()), d = to_field(g.d());
  QuadElem czd = c * p.z + d;
  if (p.is_cusp()) {
    if (czd.is_zero()) throw std::domain_error("cusp is mapped to infinity");
    return UhsPoint{(a * p.z + b) / czd, 0};
  }
  Rational denom = czd.norm() + c.norm() * p.rsq;
  QuadElem num = (a * p.z + b) * czd.conj() + (a * c.conj()).scaled(p.rsq);
  Rational inv = 1 / denom;
  Rational rsq = p.rsq * inv * inv;
  return UhsPoint{num.scaled(inv), rsq};
}

std::optional<QuadElem> apply_boundary(const MoebiusElt& g, const QuadElem& z) {
  QuadElem czd = to_field(g.c()) * z + to_field(g.d());
  if (czd.is_zero()) return std::nullopt;
  return (to_field(g.a()) * z + to_field(g.b())) / czd;
}

bool fixes(const MoebiusElt& g, const UhsPoint& p) {
  if (p.is_cusp()) {
    auto img = apply_boundary(g, p.z);
    return img && *img == p.z;
  }
  return apply(g, p) == p;
}

int element_order(const MoebiusElt& g) {
  if (g.is_identity()) return 1;
  RingElem t = g.trace();
  if (t.b != 0) return kInfiniteOrder;
  if (t.a == 0) return 2;
  if (t.a == 1 || t.a == -1) return 3;
  return kInfiniteOrder;
}

std::string to_string(FiniteGroupType t) {
  switch (t) {
    case FiniteGroupType::C1: return "C1";
    case FiniteGroupType::C2: return "C2";
    case FiniteGroupType::C3: return "C3";
    case FiniteGroupType::D2: return "D2";
    case FiniteGroupType::D3: return "D3";
    case FiniteGroupType::A4: return "A4";
  }
  return "?";
}

FiniteGroupType parse_group_type(const std::string& s) {
  for (auto t : {FiniteGroupType::C1, FiniteGroupType::C2, FiniteGroupType::C3, FiniteGroupType::D2,
                 FiniteGroupType::D3, FiniteGroupType::A4})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown group type '" + s + "'");
}

int group_order(FiniteGroupType t) {
  switch (t) {
    case FiniteGroupType::C1: return 1;
    case FiniteGroupType::C2: return 2;
    case FiniteGroupType::C3: return 3;
    case FiniteGroupType::D2: return 4;
    case FiniteGroupType::D3: return 6;
    case FiniteGroupType::A4: return 12;
  }
  return 0;
}

bool FiniteSubgroup::contains(const MoebiusElt& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

std::vector<MoebiusElt> FiniteSubgroup::elements_of_order(int k) const {
  std::vector<MoebiusElt> out;
  for (const auto& g : elements)
    if (element_order(g) == k) out.push_back(g);
  return out;
}

FiniteSubgroup subgroup_from_elements(std::vector<MoebiusElt> elements, const RingBasis& r) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  int n2 = 0, n3 = 0;
  bool has_id = false;
  for (const auto& g : elements) {
    int o = element_order(g);
    if (o == 1) has_id = true;
    else if (o == 2) ++n2;
    else if (o == 3) ++n3;
    else throw std::domain_error("element of infinite order in a finite subgroup: " + to_string(g));
  }
  if (!has_id) throw std::logic_error("subgroup without identity");
  for (const auto& g : elements)
    for (const auto& h : elements)
      if (!std::binary_search(elements.begin(), elements.end(), g * h))
        throw std::domain_error("element list is not closed under multiplication");
  FiniteSubgroup out;
  out.elements = std::move(elements);
  std::size_t n = out.elements.size();
  if (n == 1) out.type = FiniteGroupType::C1;
  else if (n == 2 && n2 == 1) out.type = FiniteGroupType::C2;
  else if (n == 3 && n3 == 2) out.type = FiniteGroupType::C3;
  else if (n == 4 && n2 == 3) out.type = FiniteGroupType::D2;
  else if (n == 6 && n2 == 3 && n3 == 2) out.type = FiniteGroupType::D3;
  else if (n == 12 && n2 == 3 && n3 == 8) out.type = FiniteGroupType::A4;
  else throw std::domain_error("finite subgroup of order " + std::to_string(n) + " is not C1, C2, C3, D2, D3 or A4");
  (void)r;
  return out;
}

FiniteSubgroup classify_subgroup(const std::vector<MoebiusElt>& gens, const RingBasis& r) {
  std::set<MoebiusElt> seen{MoebiusElt::identity(r)};
  std::vector<MoebiusElt> frontier{MoebiusElt::identity(r)};
  while (!frontier.empty()) {
    std::vector<MoebiusElt> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        MoebiusElt y = x * g;
        if (seen.insert(y).second) {
          if (seen.size() > 12) throw std::domain_error("generated subgroup is infinite or larger than A4");
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return subgroup_from_elements({seen.begin(), seen.end()}, r);
}

FiniteGroupType normaliser_type(const FiniteSubgroup& g, const FiniteSubgroup& h) {
  std::size_t k = h.elements.size();
  if (k != 2 && k != 3) throw std::domain_error("normaliser is only tabulated for subgroups of prime order 2 or 3");
  for (const auto& x : h.elements)
    if (!g.contains(x)) throw std::domain_error("subgroup is not contained in the group");
  std::vector<MoebiusElt> norm;
  for (const auto& x : g.elements) {
    MoebiusElt xi = x.inverse();
    bool ok = true;
    for (const auto& y : h.elements)
      if (!h.contains(x * y * xi)) {
        ok = false;
        break;
      }
    if (ok) norm.push_back(x);
  }
  return subgroup_from_elements(norm, g.elements.front().basis()).type;
}

std::vector<std::vector<MoebiusElt>> conjugacy_in_finite(const FiniteSubgroup& g) {
  std::vector<std::vector<MoebiusElt>> classes;
  std::set<MoebiusElt> done;
  for (const auto& x : g.elements) {
    if (done.count(x)) continue;
    std::set<MoebiusElt> cls;
    for (const auto& y : g.elements) cls.insert(y * x * y.inverse());
    done.insert(cls.begin(), cls.end());
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

FiniteSubgroup intersect(const FiniteSubgroup& g, const FiniteSubgroup& h) {
  std::vector<MoebiusElt> common;
  std::set_intersection(g.elements.begin(), g.elements.end(), h.elements.begin(), h.elements.end(),
                        std::back_inserter(common));
  return subgroup_from_elements(common, g.elements.front().basis());
}

bool Geodesic::contains(const UhsPoint& p) const {
  QuadElem w = p.z - center;
  if (w.a * dir.b != w.b * dir.a) return false;
  Rational s = parameter(p);
  return p.rsq == radius_sq - s * s * dir.norm();
}

Rational Geodesic::parameter(const UhsPoint& p) const {
  QuadElem w = p.z - center;
  return bilinear(w, dir) / dir.norm();
}

UhsPoint Geodesic::at(const Rational& s) const {
  Rational rsq = radius_sq - s * s * dir.norm();
  if (rsq < 0) throw std::domain_error("parameter outside the geodesic");
  return UhsPoint{center + dir.scaled(s), rsq};
}

Geodesic fixed_axis(const MoebiusElt& g) {
  int o = element_order(g);
  if (o != 2 && o != 3) throw std::domain_error("fixed axis requested for an element of order " + std::to_string(o));
  QuadElem a = to_field(g.a()), d = to_field(g.d()), c = to_field(g.c());
  Rational t = g.trace().a;
  Geodesic geo;
  geo.center = (a - d) / c.scaled(2);
  geo.dir = to_field(sqrt_neg_m(g.basis())) * c.conj();
  geo.radius_sq = (4 - t * t) / (4 * c.norm());
  return geo;
}

}  // namespace bianchi

#include "bianchi/chenruan.hpp"

#include <set>
#include <stdexcept>

namespace bianchi {

Rational degree_shift(const MoebiusElt& g) {
  int k = element_order(g);
  if (k == 1) throw std::domain_error("the identity has no degree shift as a rotation");
  if (k == kInfiniteOrder) throw std::domain_error("degree shift of an element of infinite order");
  // eigenvalues 1, e^{2 pi i/k}, e^{-2 pi i/k} on the tangent space
  std::array<Rational, 3> r{Rational(0), make_rational(1, k), make_rational(k - 1, k)};
  return r[0] + r[1] + r[2];
}

namespace {

Rational shift_or_zero(const MoebiusElt& g) { return g.is_identity() ? Rational(0) : degree_shift(g); }

int single_fixed_dim(const MoebiusElt& g) { return g.is_identity() ? 3 : 1; }

}  // namespace

int fixed_set_dim(const MoebiusElt& g, const MoebiusElt& h) {
  FiniteSubgroup G = classify_subgroup({g, h}, g.basis());
  switch (G.type) {
    case FiniteGroupType::C1: return 3;
    case FiniteGroupType::C2:
    case FiniteGroupType::C3: return 1;
    default: return 0;
  }
}

int obstruction_fibre_dim(const MoebiusElt& g, const MoebiusElt& h) {
  for (const auto& x : {g, h})
    if (element_order(x) == kInfiniteOrder) throw std::domain_error("element of infinite order: " + to_string(x));
  int common;
  try {
    common = fixed_set_dim(g, h);
  } catch (const std::domain_error&) {
    throw std::domain_error("elements without a common fixed point: " + to_string(g) + ", " + to_string(h));
  }
  MoebiusElt gh = g * h;
  Rational v = shift_or_zero(g) + shift_or_zero(h) - shift_or_zero(gh) - (single_fixed_dim(gh) - common);
  if (!is_integer(v)) throw std::logic_error("non-integral obstruction fibre dimension");
  return static_cast<int>(v.get_num().get_si());
}

std::vector<SectorContribution> sector_dims(const TorsionComponent& c, int component_index) {
  SectorContribution s;
  s.ell = c.ell;
  s.component = component_index;
  s.quotient_type = c.type;
  s.shift = 1;
  for (int d = 0; d <= 6; ++d) s.dims[d] = 0;
  if (c.ell == 2) {
    // the centraliser quotient of the axis is the component itself
    s.dims[2] = 1;
    if (c.type == ComponentType::Circle) s.dims[3] = 1;
    return {s};
  }
  if (c.ell == 3) {
    // centraliser quotient is a circle in both cases; the generator is
    // conjugate to its square exactly when the component is an edge
    s.dims[2] = 1;
    s.dims[3] = 1;
    if (c.type == ComponentType::Edge) return {s};
    SectorContribution sq = s;
    sq.power = 2;
    return {s, sq};
  }
  throw std::domain_error("sectors exist only for the primes 2 and 3");
}

DimMap closed_form_extra_dims(const LambdaCounts& l) {
  DimMap d;
  for (int k = 0; k <= 6; ++k) d[k] = 0;
  d[2] = l.lambda4 + 2 * l.lambda6 - l.lambda6_star;
  d[3] = l.lambda4 - l.lambda4_star + 2 * l.lambda6 - l.lambda6_star;
  return d;
}

int conjugacy_class_count(const LambdaCounts& l) { return 1 + l.lambda4 + 2 * l.lambda6 - l.lambda6_star; }

bool OrbReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const Check* OrbReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

TorsionData torsion_data(const EquivComplex& ec, int ell) {
  TorsionData t;
  t.graph = extract(ec, ell);
  t.reduced = reduce(t.graph);
  t.components = components(t.reduced);
  return t;
}

std::string dims_text(const DimMap& d) {
  std::string s;
  for (const auto& [k, v] : d)
    if (v != 0) s += (s.empty() ? "" : ", ") + std::to_string(k) + ":" + std::to_string(v);
  return "{" + s + "}";
}

}  // namespace

OrbReport assemble(std::shared_ptr<const FloorComplex> fc) {
  OrbReport rep;
  rep.m = fc->basis.m;
  rep.omega_case = fc->basis.case_name();
  rep.floor = fc;
  auto ec = std::make_shared<EquivComplex>(refine(*fc));
  rep.complex = ec;
  auto qc = std::make_shared<const QuotientComplex>(quotient(*ec));
  rep.quotient = qc;
  rep.quotient_cells = qc->cell_count;
  rep.betti = quotient_cohomology(*qc);

  rep.two = torsion_data(*ec, 2);
  rep.three = torsion_data(*ec, 3);
  rep.lambda = lambda_counts(rep.two.components, rep.three.components);

  for (int d = 0; d <= 6; ++d) {
    rep.untwisted_dims[d] = d <= 2 ? rep.betti[d] : 0;
    rep.extra_dims[d] = 0;
  }
  for (const TorsionData* t : {&rep.two, &rep.three})
    for (int i = 0; i < static_cast<int>(t->components.size()); ++i) {
      const TorsionComponent& c = t->components[i];
      const EquivCell& e = ec->edges[ec->orbit_reps[1][c.edge_orbits.front()]];
      MoebiusElt gen = e.stabiliser.elements_of_order(c.ell).front();
      for (auto& s : sector_dims(c, i)) {
        s.representative = s.power == 2 ? gen * gen : gen;
        for (const auto& [d, v] : s.dims) rep.extra_dims[d] += v;
        rep.twisted.push_back(std::move(s));
      }
    }
  rep.closed_form_dims = closed_form_extra_dims(rep.lambda);
  for (int d = 0; d <= 6; ++d) rep.total_dims[d] = rep.untwisted_dims[d] + rep.extra_dims[d];
  rep.fc_count = conjugacy_class_count(rep.lambda);

  // degree shifts and obstruction dimensions over all stabilisers
  {
    std::set<MoebiusElt> torsion;
    for (const auto* cells : {&ec->vertices, &ec->edges})
      for (const auto& c : *cells)
        for (const auto& g : c.stabiliser.elements)
          if (!g.is_identity()) torsion.insert(g);
    int bad = 0;
    for (const auto& g : torsion)
      if (degree_shift(g) != 1) ++bad;
    rep.checks.push_back({"degree_shift", bad == 0,
                          std::to_string(torsion.size()) + " torsion elements, " + std::to_string(bad) + " with shift != 1"});
  }
  {
    int pairs = 0, bad = 0;
    std::set<std::vector<MoebiusElt>> groups;
    for (const auto& v : ec->vertices)
      if (v.stabiliser.elements.size() > 1) groups.insert(v.stabiliser.elements);
    for (const auto& G : groups)
      for (const auto& g : G)
        for (const auto& h : G) {
          if (g.is_identity() || h.is_identity()) continue;
          // a rotation of order 3 paired with itself shares its axis without being inverse
          if (g == h && element_order(g) == 3) continue;
          ++pairs;
          if (obstruction_fibre_dim(g, h) != 0) ++bad;
        }
    rep.checks.push_back({"obstruction_fibre_dim", bad == 0,
                          std::to_string(pairs) + " pairs with a common fixed point, " + std::to_string(bad) + " non-zero"});
  }
  rep.checks.push_back({"mislin_count", rep.fc_count == 1 + static_cast<int>(rep.twisted.size()),
                        "1 + l4 + 2 l6 - l6* = " + std::to_string(rep.fc_count) + ", 1 + sectors = " +
                            std::to_string(1 + rep.twisted.size())});
  rep.checks.push_back({"corollary_vs_sectors", rep.closed_form_dims == rep.extra_dims,
                        "closed form " + dims_text(rep.closed_form_dims) + ", sector sum " + dims_text(rep.extra_dims)});
  {
    bool ok = true;
    std::string detail;
    for (const TorsionData* t : {&rep.two, &rep.three}) {
      bool idem = reduce(t->reduced) == t->reduced;
      auto before = components(t->graph);
      bool same = before.size() == t->components.size();
      for (std::size_t i = 0; same && i < before.size(); ++i)
        same = before[i].type == t->components[i].type && before[i].edge_count == t->components[i].edge_count;
      ok = ok && idem && same;
      detail += (detail.empty() ? "" : "; ") + std::string("l=") + std::to_string(t->graph.ell) + ": " +
                std::to_string(t->graph.edges.size()) + " -> " + std::to_string(t->reduced.edges.size()) + " edges" +
                (idem ? "" : ", not idempotent") + (same ? "" : ", components changed");
    }
    rep.checks.push_back({"reduce_idempotent", ok, detail});
  }
  rep.checks.push_back({"lambda_star_bound",
                        rep.lambda.lambda4_star <= rep.lambda.lambda4 && rep.lambda.lambda6_star <= rep.lambda.lambda6,
                        "l4* <= l4 and l6* <= l6"});
  return rep;
}

OrbReport assemble(long m, const SwanOptions& opts) {
  RingBasis r = RingBasis::for_m(m);
  return assemble(std::make_shared<const FloorComplex>(compute_floor(r, opts)));
}

}  // namespace bianchi

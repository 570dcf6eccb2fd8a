#pragma once

#include "bianchi/torsion.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bianchi {

// Sum of the eigen-angle fractions of a rotation of order 2 or 3 acting on
// the tangent space of complex hyperbolic 3-space at a fixed point.
Rational degree_shift(const MoebiusElt& g);

// Complex dimension of the common fixed set of the generated finite group in
// complex hyperbolic 3-space: 3 (trivial), 1 (cyclic: one axis), 0 (a point).
int fixed_set_dim(const MoebiusElt& g, const MoebiusElt& h);

// shift(g) + shift(h) - shift(gh) - codim(Y^{g,h} in Y^{gh}).
int obstruction_fibre_dim(const MoebiusElt& g, const MoebiusElt& h);

using DimMap = std::map<int, int>;  // degree -> dimension

struct SectorContribution {
  int ell = 0;
  int component = 0;  // index into the components of the ell-torsion graph
  int power = 1;      // 2 for the class of the square of an order-3 generator
  ComponentType quotient_type = ComponentType::Circle;
  Rational shift = 1;
  DimMap dims;
  std::optional<MoebiusElt> representative;
};

std::vector<SectorContribution> sector_dims(const TorsionComponent& c, int component_index);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TorsionData {
  TorsionGraph graph, reduced;
  std::vector<TorsionComponent> components;
};

struct OrbReport {
  long m = 0;
  std::string omega_case;
  std::shared_ptr<const FloorComplex> floor;
  std::shared_ptr<const EquivComplex> complex;
  std::shared_ptr<const QuotientComplex> quotient;
  std::array<int, 3> quotient_cells{0, 0, 0};
  std::array<int, 3> betti{0, 0, 0};
  TorsionData two, three;
  LambdaCounts lambda;
  DimMap untwisted_dims, extra_dims, closed_form_dims, total_dims;
  std::vector<SectorContribution> twisted;
  int fc_count = 0;
  std::vector<Check> checks;

  bool all_pass() const;
  const Check* find_check(const std::string& name) const;
};

// Extra dimensions in degrees 2 and 3 predicted by the lambda counts.
DimMap closed_form_extra_dims(const LambdaCounts& l);
int conjugacy_class_count(const LambdaCounts& l);

// Full pipeline from the floor: refinement, quotient cohomology, torsion
// sub-complexes, sectors and the consistency checks that need no search.
OrbReport assemble(std::shared_ptr<const FloorComplex> fc);
OrbReport assemble(long m, const SwanOptions& opts = {});

}  // namespace bianchi

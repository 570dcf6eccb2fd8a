#pragma once

#include "bianchi/swan.hpp"

#include <array>
#include <map>
#include <memory>
#include <vector>

namespace bianchi {

struct EquivCell {
  int dim = 0;
  // dim 0: {v, 0}; dim 1: canonical (first, second); dim 2: counter-clockwise cycle
  std::vector<VRef> verts;
  int carrier = -1;       // faces: hemisphere index; it carries the cell after translating by carrier_shift
  Shift carrier_shift;
  bool cusp = false;      // vertices at height 0, removed from the complex
  FiniteSubgroup stabiliser;
  int orbit = -1;
  int orbit_sign = 1;     // +1 if the canonical orientation agrees with the orbit representative
  bool pointwise_fixed = true;
};

// Oriented boundary entry of a face: edge index and +1 when the face boundary
// runs along the edge's canonical orientation.
struct BoundaryEntry {
  int edge;
  int sign;
};

// An edge end attached to a vertex: the edge translated by `shift` has its
// end number `end` (0 = first, 1 = second) at the normalised vertex.
struct Incidence {
  int edge;
  int end;
  Shift shift;
};

// Elements of PSL_2(O) carrying one floor point to another.
class Transporter {
 public:
  explicit Transporter(const RingBasis& r) : finder_(r) {}
  std::vector<MoebiusElt> between(const UhsPoint& p, const UhsPoint& q);
  FiniteSubgroup stabiliser(const UhsPoint& p);
  HemisphereFinder& finder() { return finder_; }

 private:
  const std::vector<Hemisphere>& through(const UhsPoint& p);
  HemisphereFinder finder_;
  std::map<UhsPoint, std::vector<Hemisphere>> cache_;
};

// The floor subdivided so that every cell stabiliser fixes its cell pointwise,
// with stabilisers and Gamma-orbits of all cells.
struct EquivComplex {
  RingBasis basis;
  std::vector<Hemisphere> hemispheres;
  std::vector<UhsPoint> points;  // normalised, sorted; vertex i sits at points[i]
  std::vector<EquivCell> vertices, edges, faces;
  std::vector<std::vector<BoundaryEntry>> face_boundary;
  std::vector<std::vector<Incidence>> incidences;  // per vertex
  std::array<std::vector<int>, 3> orbit_reps;       // representative cell of each orbit
  std::array<std::vector<std::vector<int>>, 3> orbit_members;
  std::shared_ptr<Transporter> transporter;

  UhsPoint point(const VRef& r) const { return points[r.v].shifted(r.s); }
  int find_point(const UhsPoint& normalised) const;
  const std::vector<EquivCell>& cells(int dim) const;
  int orbit_count(int dim) const { return static_cast<int>(orbit_reps[dim].size()); }
  // edge index of a segment p -> q and the sign relating the two orientations
  std::pair<int, int> edge_of(const VRef& p, const VRef& q) const;

  std::map<EdgeKey, int> edge_index;
  std::map<std::vector<VRef>, int> face_index;
};

EquivComplex refine(const FloorComplex& fc);

// Cell stabiliser (setwise) computed from scratch; used to check that
// refine() leaves no cell that is moved onto itself non-trivially.
FiniteSubgroup setwise_stabiliser(const EquivComplex& ec, int dim, int index);

struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, int>>> columns;  // (row, entry)
};

// The orbit space of the floor with the cusps cut off: cells are orbits of
// non-cusp cells plus one vertex per edge end at a cusp and one edge per face
// corner at a cusp.
struct QuotientComplex {
  std::array<int, 3> cell_count{0, 0, 0};
  SparseMatrix d1, d2;  // boundary maps C1 -> C0, C2 -> C1
  int truncation_vertices = 0;
  int truncation_edges = 0;
};

QuotientComplex quotient(const EquivComplex& ec);
int rational_rank(const SparseMatrix& m);
// dimensions of H^0, H^1, H^2 with rational coefficients
std::array<int, 3> quotient_cohomology(const QuotientComplex& qc);

}  // namespace bianchi

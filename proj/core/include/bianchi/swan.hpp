#pragma once

#include "bianchi/moebius.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

namespace bianchi {

// Hemisphere of points with N(mu*z - lambda) + N(mu)*r^2 = 1, (lambda, mu) = O.
// Centre lambda/mu, squared radius 1/N(mu).  It is the isometric sphere of
// pairing = [[alpha, beta], [mu, -lambda]].
struct Hemisphere {
  RingElem mu, lambda;
  QuadElem center;
  Rational rsq;
  MoebiusElt pairing;

  static Hemisphere make(const RingElem& mu, const RingElem& lambda);
  Hemisphere translated(const Shift& s) const;
  // N(z - centre) - r^2: negative strictly inside
  Rational power(const QuadElem& z) const;
  bool contains(const UhsPoint& p) const { return power(p.z) + p.rsq == 0; }
  bool covers(const UhsPoint& p) const { return power(p.z) + p.rsq < 0; }
};

// Enumerates ring elements mu up to sign by norm and finds hemispheres
// through, or strictly above, a given point.
class HemisphereFinder {
 public:
  explicit HemisphereFinder(const RingBasis& r) : basis_(r) {}

  const RingBasis& basis() const { return basis_; }
  // mu != 0 with N(mu) <= bound, one per sign class, ordered by norm
  std::vector<RingElem> mus_up_to(std::int64_t bound);

  // Exactly the hemispheres containing p.  For a cusp only those with
  // N(mu) <= cusp_norm_bound are considered.
  std::vector<Hemisphere> through(const UhsPoint& p, std::int64_t cusp_norm_bound = 0);
  // Hemispheres strictly above p (same cusp convention).
  std::vector<Hemisphere> covering(const UhsPoint& p, std::int64_t cusp_norm_bound = 0);

 private:
  std::vector<Hemisphere> search(const UhsPoint& p, std::int64_t cusp_norm_bound, bool strict);
  void grow(std::int64_t bound);

  RingBasis basis_;
  std::int64_t have_ = 0;
  std::vector<RingElem> mus_;
};

// All hemispheres with N(mu) <= norm_bound and centre in [0,1) x [0,1).
std::vector<Hemisphere> enumerate_hemispheres(const RingBasis& r, std::int64_t norm_bound);

// A vertex of the floor given as a normalised vertex plus a lattice shift.
struct VRef {
  int v = -1;
  Shift s;
  bool operator==(const VRef&) const = default;
  auto operator<=>(const VRef&) const = default;
  VRef shifted(const Shift& t) const { return {v, s + t}; }
};

struct EdgeKey {
  VRef first, second;
  auto operator<=>(const EdgeKey&) const = default;
  bool operator==(const EdgeKey&) const = default;
};

// Canonical representative modulo translations.  `reversed` is true when p->q
// runs from key.second to key.first; `shift` moves the key onto (p, q).
struct CanonicalEdge {
  EdgeKey key;
  bool reversed = false;
  Shift shift;
};
CanonicalEdge canonical_edge(const VRef& p, const VRef& q);

struct CanonicalFace {
  std::vector<VRef> key;
  Shift shift;
};
// cycle must be listed counter-clockwise
CanonicalFace canonical_face(const std::vector<VRef>& cycle);

struct FloorEdge {
  EdgeKey ends;
};

struct FloorFace {
  int hemisphere = -1;            // index into FloorComplex::hemispheres
  std::vector<VRef> cycle;        // counter-clockwise, in the frame of the hemisphere
};

// The part of the boundary of the Bianchi fundamental polyhedron lying on
// hemispheres, modulo the translations by O.  Vertices have z in [0,1)^2.
struct FloorComplex {
  RingBasis basis;
  std::int64_t norm_bound = 0;
  std::vector<std::int64_t> witness_bounds;
  std::vector<Hemisphere> hemispheres;
  std::vector<UhsPoint> vertices;
  std::vector<FloorEdge> edges;
  std::vector<FloorFace> faces;
  std::vector<int> cusps;

  UhsPoint point(const VRef& r) const { return vertices[r.v].shifted(r.s); }
  int find_vertex(const UhsPoint& normalised) const;
  // same cells, ignoring the bookkeeping of bounds
  bool same_cells(const FloorComplex& o) const;
};

struct SwanOptions {
  std::int64_t initial_bound = 2;
  std::int64_t max_bound = 1 << 20;
  std::int64_t cusp_norm_ceiling = 10000;
  bool witnesses = true;
};

struct FloorAttempt {
  bool covered = false;       // cells tile the torus and every vertex is on or above all hemispheres used
  std::int64_t violating_norm = 0;  // > 0 if a vertex lies below a hemisphere outside the bound
  FloorComplex floor;
};

// One pass of the power-diagram construction with all hemispheres of norm <= bound.
FloorAttempt floor_at_bound(const RingBasis& r, std::int64_t bound, std::int64_t cusp_norm_ceiling);

// Raises the bound until the floor is certified, then checks it is unchanged at
// bound + 1 and bound + 2.
FloorComplex compute_floor(const RingBasis& r, const SwanOptions& opts = {});

struct SidePairing {
  int face = -1;
  int image = -1;
  Shift image_shift;  // g maps face onto faces[image] translated by image_shift
  MoebiusElt g;
};
std::vector<SidePairing> side_pairings(const FloorComplex& fc);

}  // namespace bianchi

#pragma once

#include "bianchi/equivariant.hpp"

#include <array>
#include <string>
#include <vector>

namespace bianchi {

// End `end` (0 or 1) of edge `edge` of a torsion graph.
struct TorsionEnd {
  int edge;
  int end;
  auto operator<=>(const TorsionEnd&) const = default;
};

// A vertex orbit of the l-torsion sub-complex.  The edge ends arriving at it
// are grouped by rotation axis up to the vertex stabiliser: a class with one
// end is an axis reflected at the vertex, a class with two ends an axis
// passing through it.
struct TorsionVertex {
  int orbit = -1;
  FiniteGroupType type = FiniteGroupType::C1;
  std::vector<std::vector<TorsionEnd>> classes;

  int end_count() const;
};

struct TorsionEdge {
  int orbit = -1;  // smallest edge orbit merged into this edge
  FiniteGroupType type = FiniteGroupType::C1;
  std::array<int, 2> ends{-1, -1};  // vertex indices
  int weight = 1;                   // number of edge orbits merged into it
  std::vector<int> orbits;          // all edge orbits merged into it, in path order
};

struct TorsionGraph {
  int ell = 0;
  std::vector<TorsionVertex> vertices;
  std::vector<TorsionEdge> edges;

  bool operator==(const TorsionGraph&) const;
};

bool operator==(const TorsionVertex& a, const TorsionVertex& b);
bool operator==(const TorsionEdge& a, const TorsionEdge& b);

// Orbit space of the cells whose stabiliser contains an element of order ell.
// Primes ell >= 5 give the empty graph; other values are rejected.
TorsionGraph extract(const EquivComplex& ec, int ell);

// Condition B of the merging rule at a vertex of type sigma between two
// edges of type tau.
bool merge_allowed(FiniteGroupType sigma, FiniteGroupType tau, int ell);
bool is_ell_normal(FiniteGroupType g, int ell);
// Type of the normaliser of the centre of a Sylow ell-subgroup of g.
FiniteGroupType sylow_centre_normaliser(FiniteGroupType g, int ell);

// Merges edge pairs across vertices meeting Conditions A and B until nothing
// changes; vertices and edges keep their relative order.
TorsionGraph reduce(const TorsionGraph& tg);

enum class ComponentType { Edge, Circle };
std::string to_string(ComponentType t);

struct TorsionComponent {
  ComponentType type = ComponentType::Circle;
  int ell = 0;
  int edge_count = 0;  // edge orbits of the unreduced sub-complex on this axis quotient
  std::vector<FiniteGroupType> vertex_types;
  std::vector<FiniteGroupType> endpoint_types;
  std::vector<int> edge_orbits;
};

// Axis quotients: paths between reflection ends are Edges, closed chains Circles.
std::vector<TorsionComponent> components(const TorsionGraph& tg);

struct LambdaCounts {
  int lambda4 = 0, lambda4_star = 0, lambda6 = 0, lambda6_star = 0;
  bool operator==(const LambdaCounts&) const = default;
};

LambdaCounts lambda_counts(const std::vector<TorsionComponent>& two,
                           const std::vector<TorsionComponent>& three);

// Throws if the graph is not a disjoint union of paths and cycles built from
// consistent edge ends.
void check_shape(const TorsionGraph& tg);

}  // namespace bianchi

#include "bianchi/torsion.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bianchi {

int TorsionVertex::end_count() const {
  int n = 0;
  for (const auto& c : classes) n += static_cast<int>(c.size());
  return n;
}

bool operator==(const TorsionVertex& a, const TorsionVertex& b) {
  return a.orbit == b.orbit && a.type == b.type && a.classes == b.classes;
}

bool operator==(const TorsionEdge& a, const TorsionEdge& b) {
  return a.orbit == b.orbit && a.type == b.type && a.ends == b.ends && a.weight == b.weight &&
         a.orbits == b.orbits;
}

bool TorsionGraph::operator==(const TorsionGraph& o) const {
  return ell == o.ell && vertices == o.vertices && edges == o.edges;
}

std::string to_string(ComponentType t) { return t == ComponentType::Edge ? "Edge" : "Circle"; }

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<MoebiusElt> conjugated(const std::vector<MoebiusElt>& h, const MoebiusElt& x) {
  MoebiusElt xi = x.inverse();
  std::vector<MoebiusElt> out;
  for (const auto& y : h) out.push_back(x * y * xi);
  std::sort(out.begin(), out.end());
  return out;
}

// canonical member of the conjugacy class of h under g
std::vector<MoebiusElt> class_key(const FiniteSubgroup& g, const std::vector<MoebiusElt>& h) {
  std::vector<MoebiusElt> best;
  for (const auto& x : g.elements) {
    auto c = conjugated(h, x);
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

}  // namespace

TorsionGraph extract(const EquivComplex& ec, int ell) {
  TorsionGraph tg;
  tg.ell = ell;
  if (ell != 2 && ell != 3) {
    if (is_prime(ell)) return tg;  // no rotations of order >= 5 in these groups
    throw std::domain_error("torsion sub-complexes are defined for primes, got " + std::to_string(ell));
  }
  const RingBasis& r = ec.basis;
  Transporter& tr = *ec.transporter;

  std::map<int, int> edge_of_orbit;
  for (int o = 0; o < ec.orbit_count(1); ++o) {
    const EquivCell& e = ec.edges[ec.orbit_reps[1][o]];
    if (e.stabiliser.elements_of_order(ell).empty()) continue;
    for (const auto& vr : e.verts)
      if (ec.vertices[vr.v].cusp) throw std::logic_error("torsion edge ending in a cusp");
    edge_of_orbit[o] = static_cast<int>(tg.edges.size());
    TorsionEdge te;
    te.orbit = o;
    te.type = e.stabiliser.type;
    te.orbits = {o};
    tg.edges.push_back(te);
  }

  std::set<int> vorbits;
  for (const auto& [o, idx] : edge_of_orbit) {
    const EquivCell& e = ec.edges[ec.orbit_reps[1][o]];
    for (const auto& vr : e.verts) vorbits.insert(ec.vertices[vr.v].orbit);
  }
  std::map<int, int> vertex_of_orbit;
  for (int vo : vorbits) {
    vertex_of_orbit[vo] = static_cast<int>(tg.vertices.size());
    tg.vertices.push_back(TorsionVertex{vo, ec.vertices[ec.orbit_reps[0][vo]].stabiliser.type, {}});
  }
  for (auto& [o, idx] : edge_of_orbit) {
    const EquivCell& e = ec.edges[ec.orbit_reps[1][o]];
    for (int end = 0; end < 2; ++end) tg.edges[idx].ends[end] = vertex_of_orbit.at(ec.vertices[e.verts[end].v].orbit);
  }

  for (auto& tv : tg.vertices) {
    const int rep = ec.orbit_reps[0][tv.orbit];
    const UhsPoint& P = ec.points[rep];
    const FiniteSubgroup& sv = ec.vertices[rep].stabiliser;
    std::map<std::vector<MoebiusElt>, std::set<TorsionEnd>> classes;
    for (int w : ec.orbit_members[0][tv.orbit]) {
      std::vector<MoebiusElt> to_rep = w == rep ? std::vector<MoebiusElt>{MoebiusElt::identity(r)}
                                                : tr.between(ec.points[w], P);
      if (to_rep.empty()) throw std::logic_error("no transporter between members of a vertex orbit");
      const MoebiusElt& g = to_rep.front();
      for (const auto& inc : ec.incidences[w]) {
        const EquivCell& e = ec.edges[inc.edge];
        auto it = edge_of_orbit.find(e.orbit);
        if (it == edge_of_orbit.end()) continue;
        MoebiusElt t = MoebiusElt::translation(r, inc.shift);
        auto germ = conjugated(e.stabiliser.elements, g * t);
        for (const auto& x : germ)
          if (!sv.contains(x)) throw std::logic_error("edge stabiliser does not fix its endpoint");
        int end = e.orbit_sign < 0 ? 1 - inc.end : inc.end;
        if (tg.edges[it->second].ends[end] != vertex_of_orbit.at(tv.orbit))
          throw std::logic_error("edge orbit end attached to the wrong vertex orbit");
        classes[class_key(sv, germ)].insert(TorsionEnd{it->second, end});
      }
    }
    for (auto& [key, ends] : classes) {
      if (ends.size() > 2) throw std::logic_error("more than two quotient ends on one rotation axis");
      tv.classes.emplace_back(ends.begin(), ends.end());
    }
  }
  check_shape(tg);
  return tg;
}

bool is_ell_normal(FiniteGroupType g, int ell) {
  // Every Sylow subgroup occurring here is abelian, and distinct Sylow
  // subgroups of D3 and A4 intersect trivially, so the centre of one Sylow
  // subgroup lies in no other.
  if (ell != 2 && ell != 3) throw std::domain_error("only the primes 2 and 3 occur");
  (void)g;
  return true;
}

FiniteGroupType sylow_centre_normaliser(FiniteGroupType g, int ell) {
  using T = FiniteGroupType;
  if (ell == 2) {
    switch (g) {
      case T::C2: return T::C2;
      case T::D2: return T::D2;  // Sylow = centre = D2, normal
      case T::D3: return T::C2;  // self-normalising C2
      case T::A4: return T::A4;  // centre of the normal Sylow D2
      default: break;
    }
  } else if (ell == 3) {
    switch (g) {
      case T::C3: return T::C3;
      case T::D3: return T::D3;
      case T::A4: return T::C3;
      default: break;
    }
  }
  throw std::domain_error("group " + to_string(g) + " has no non-trivial Sylow " + std::to_string(ell) + "-subgroup");
}

bool merge_allowed(FiniteGroupType sigma, FiniteGroupType tau, int ell) {
  if (sigma == tau) return true;
  return is_ell_normal(sigma, ell) && sylow_centre_normaliser(sigma, ell) == tau;
}

namespace {

// index of a vertex where Conditions A and B allow a merge, or -1
int mergeable_vertex(const TorsionGraph& tg) {
  for (int i = 0; i < static_cast<int>(tg.vertices.size()); ++i) {
    const auto& v = tg.vertices[i];
    // two ends on one axis passing through; two reflection ends would join
    // different axis quotients
    if (v.end_count() != 2 || v.classes.size() != 1) continue;
    std::vector<TorsionEnd> ends;
    for (const auto& c : v.classes) ends.insert(ends.end(), c.begin(), c.end());
    const TorsionEdge& a = tg.edges[ends[0].edge];
    const TorsionEdge& b = tg.edges[ends[1].edge];
    if (ends[0].edge == ends[1].edge) continue;
    if (a.type != b.type) continue;
    if (merge_allowed(v.type, a.type, tg.ell)) return i;
  }
  return -1;
}

}  // namespace

TorsionGraph reduce(const TorsionGraph& input) {
  TorsionGraph tg = input;
  for (int s; (s = mergeable_vertex(tg)) >= 0;) {
    std::vector<TorsionEnd> ends;
    for (const auto& c : tg.vertices[s].classes) ends.insert(ends.end(), c.begin(), c.end());
    if (ends[1].edge < ends[0].edge) std::swap(ends[0], ends[1]);
    const int ia = ends[0].edge, ib = ends[1].edge;
    const int ea = ends[0].end, eb = ends[1].end;
    const TorsionEdge a = tg.edges[ia], b = tg.edges[ib];

    TorsionEdge merged;
    merged.type = a.type;
    merged.ends = {a.ends[1 - ea], b.ends[1 - eb]};
    merged.weight = a.weight + b.weight;
    merged.orbits = a.orbits;
    if (ea == 0) std::reverse(merged.orbits.begin(), merged.orbits.end());
    std::vector<int> tail = b.orbits;
    if (eb == 1) std::reverse(tail.begin(), tail.end());
    merged.orbits.insert(merged.orbits.end(), tail.begin(), tail.end());
    merged.orbit = std::min(a.orbit, b.orbit);

    for (auto& v : tg.vertices)
      for (auto& c : v.classes) {
        for (auto& e : c) {
          if (e.edge == ia && e.end == 1 - ea) e = TorsionEnd{ia, 0};
          else if (e.edge == ib && e.end == 1 - eb) e = TorsionEnd{ia, 1};
        }
      }
    tg.edges[ia] = merged;
    tg.edges.erase(tg.edges.begin() + ib);
    tg.vertices.erase(tg.vertices.begin() + s);
    for (auto& e : tg.edges)
      for (auto& x : e.ends)
        if (x > s) --x;
    for (auto& v : tg.vertices)
      for (auto& c : v.classes) {
        for (auto& e : c)
          if (e.edge > ib) --e.edge;
        std::sort(c.begin(), c.end());
      }
  }
  check_shape(tg);
  return tg;
}

void check_shape(const TorsionGraph& tg) {
  std::map<TorsionEnd, int> seen;
  for (int i = 0; i < static_cast<int>(tg.vertices.size()); ++i)
    for (const auto& c : tg.vertices[i].classes) {
      if (c.empty() || c.size() > 2) throw std::logic_error("axis class with " + std::to_string(c.size()) + " ends");
      for (const auto& e : c) {
        if (e.edge < 0 || e.edge >= static_cast<int>(tg.edges.size()) || (e.end != 0 && e.end != 1))
          throw std::logic_error("dangling edge end in torsion graph");
        if (tg.edges[e.edge].ends[e.end] != i) throw std::logic_error("edge end listed at the wrong vertex");
        if (!seen.emplace(e, i).second) throw std::logic_error("edge end listed twice");
      }
    }
  if (seen.size() != 2 * tg.edges.size()) throw std::logic_error("edge end missing from its vertex");
}

std::vector<TorsionComponent> components(const TorsionGraph& tg) {
  check_shape(tg);
  // nodes are (vertex, axis class)
  std::vector<std::pair<int, int>> nodes;
  std::map<TorsionEnd, int> node_of_end;
  for (int i = 0; i < static_cast<int>(tg.vertices.size()); ++i)
    for (int c = 0; c < static_cast<int>(tg.vertices[i].classes.size()); ++c) {
      for (const auto& e : tg.vertices[i].classes[c]) node_of_end[e] = static_cast<int>(nodes.size());
      nodes.emplace_back(i, c);
    }
  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < static_cast<int>(tg.edges.size()); ++e) {
    int a = find(node_of_end.at({e, 0})), b = find(node_of_end.at({e, 1}));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, TorsionComponent> by_root;
  for (int n = 0; n < static_cast<int>(nodes.size()); ++n) {
    auto& comp = by_root[find(n)];
    const auto& v = tg.vertices[nodes[n].first];
    comp.vertex_types.push_back(v.type);
    if (v.classes[nodes[n].second].size() == 1) comp.endpoint_types.push_back(v.type);
  }
  for (int e = 0; e < static_cast<int>(tg.edges.size()); ++e) {
    auto& comp = by_root[find(node_of_end.at({e, 0}))];
    comp.edge_count += tg.edges[e].weight;
    comp.edge_orbits.insert(comp.edge_orbits.end(), tg.edges[e].orbits.begin(), tg.edges[e].orbits.end());
  }
  std::vector<TorsionComponent> out;
  for (auto& [root, comp] : by_root) {
    comp.ell = tg.ell;
    if (comp.endpoint_types.empty()) comp.type = ComponentType::Circle;
    else if (comp.endpoint_types.size() == 2) comp.type = ComponentType::Edge;
    else throw std::logic_error("torsion component with " + std::to_string(comp.endpoint_types.size()) + " endpoints");
    std::sort(comp.edge_orbits.begin(), comp.edge_orbits.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const TorsionComponent& x, const TorsionComponent& y) {
    return x.edge_orbits < y.edge_orbits;
  });
  return out;
}

LambdaCounts lambda_counts(const std::vector<TorsionComponent>& two, const std::vector<TorsionComponent>& three) {
  LambdaCounts l;
  for (const auto& c : two) {
    if (c.ell != 2) throw std::invalid_argument("2-torsion list contains a component for another prime");
    ++l.lambda4;
    if (c.type == ComponentType::Edge) ++l.lambda4_star;
  }
  for (const auto& c : three) {
    if (c.ell != 3) throw std::invalid_argument("3-torsion list contains a component for another prime");
    ++l.lambda6;
    if (c.type == ComponentType::Edge) ++l.lambda6_star;
  }
  return l;
}

}  // namespace bianchi

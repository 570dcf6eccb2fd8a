#pragma once

#include "bianchi/chenruan.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace testsupport {

using namespace bianchi;

// Pipeline results shared by the tests of one binary.
inline const OrbReport& report_for(long m) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<OrbReport>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<OrbReport>(assemble(m));
  return *slot;
}

// Published points compared modulo the translation lattice.
inline bool contains_point(const EquivComplex& ec, const UhsPoint& p) {
  return ec.find_point(normalize(p).first) >= 0;
}

inline UhsPoint point(const RingBasis& r, Rational a, Rational b, Rational rsq) {
  return make_point(QuadElem(r, std::move(a), std::move(b)), std::move(rsq));
}

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

struct ExpectedComponent {
  ComponentType type;
  int edge_count;
  std::vector<int> edge_orbits;
};

struct SyntheticGraph {
  TorsionGraph graph;
  std::vector<ExpectedComponent> expected;  // sorted by edge_orbits
};

inline std::vector<FiniteGroupType> vertex_types(int ell) {
  using T = FiniteGroupType;
  return ell == 2 ? std::vector<T>{T::C2, T::D2, T::D3, T::A4} : std::vector<T>{T::C3, T::D3, T::A4};
}

// Random disjoint union of decorated paths and cycles whose components are
// known by construction.  Axis classes of different components are sometimes
// placed at one vertex, edges are renumbered and re-oriented at random.
inline SyntheticGraph synthetic_graph(std::mt19937& rng, int ell) {
  using T = FiniteGroupType;
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const auto vtypes = vertex_types(ell);
  const std::vector<T> etypes = ell == 2 ? std::vector<T>{T::C2, T::C2, T::C2, T::D2} : std::vector<T>{T::C3, T::C3, T::C3, T::D3};

  struct RawEdge {
    int a, b;  // node indices
    T type;
    int orbit;
  };
  std::vector<std::vector<std::pair<int, int>>> node_ends;  // node -> (edge, end)
  std::vector<RawEdge> edges;
  std::vector<ExpectedComponent> expected;
  int next_orbit = 0;
  const int ncomp = uni(1, 5);
  for (int c = 0; c < ncomp; ++c) {
    const bool circle = uni(0, 1) == 1;
    const int n = uni(1, 6);
    const int first = static_cast<int>(node_ends.size());
    const int nodes = circle ? n : n + 1;
    node_ends.resize(node_ends.size() + nodes);
    ExpectedComponent ec{circle ? ComponentType::Circle : ComponentType::Edge, n, {}};
    for (int i = 0; i < n; ++i) {
      int a = first + i, b = first + (circle ? (i + 1) % n : i + 1);
      int e = static_cast<int>(edges.size());
      edges.push_back({a, b, etypes[uni(0, static_cast<int>(etypes.size()) - 1)], next_orbit});
      ec.edge_orbits.push_back(next_orbit++);
      node_ends[a].push_back({e, 0});
      node_ends[b].push_back({e, 1});
    }
    expected.push_back(ec);
  }
  // shuffle orbit labels so that sorting by label mixes components
  std::vector<int> relabel(next_orbit);
  std::iota(relabel.begin(), relabel.end(), 0);
  std::shuffle(relabel.begin(), relabel.end(), rng);
  for (auto& e : edges) e.orbit = relabel[e.orbit];
  for (auto& ec : expected) {
    for (auto& o : ec.edge_orbits) o = relabel[o];
    std::sort(ec.edge_orbits.begin(), ec.edge_orbits.end());
  }
  std::sort(expected.begin(), expected.end(),
            [](const ExpectedComponent& x, const ExpectedComponent& y) { return x.edge_orbits < y.edge_orbits; });

  // group nodes (axis classes) into vertices
  std::vector<int> vertex_of_node(node_ends.size());
  int nverts = 0;
  for (std::size_t i = 0; i < node_ends.size(); ++i)
    vertex_of_node[i] = (nverts > 0 && uni(0, 4) == 0) ? uni(0, nverts - 1) : nverts++;
  std::vector<int> vperm(nverts);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<int> eperm(edges.size());
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> flip(edges.size());
  for (auto& f : flip) f = uni(0, 1);

  TorsionGraph tg;
  tg.ell = ell;
  tg.vertices.resize(nverts);
  for (int v = 0; v < nverts; ++v) {
    tg.vertices[v].orbit = 1000 + v;
    tg.vertices[v].type = vtypes[uni(0, static_cast<int>(vtypes.size()) - 1)];
  }
  tg.edges.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    TorsionEdge& te = tg.edges[eperm[e]];
    te.orbit = edges[e].orbit;
    te.orbits = {edges[e].orbit};
    te.type = edges[e].type;
    int va = vperm[vertex_of_node[edges[e].a]], vb = vperm[vertex_of_node[edges[e].b]];
    te.ends = flip[e] ? std::array<int, 2>{vb, va} : std::array<int, 2>{va, vb};
  }
  for (std::size_t n = 0; n < node_ends.size(); ++n) {
    std::vector<TorsionEnd> cls;
    for (auto [e, end] : node_ends[n]) cls.push_back(TorsionEnd{eperm[e], flip[e] ? 1 - end : end});
    std::sort(cls.begin(), cls.end());
    tg.vertices[vperm[vertex_of_node[n]]].classes.push_back(cls);
  }
  return {tg, expected};
}

inline bool matches(const std::vector<TorsionComponent>& got, const std::vector<ExpectedComponent>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].type != want[i].type || got[i].edge_count != want[i].edge_count ||
        got[i].edge_orbits != want[i].edge_orbits)
      return false;
  return true;
}

// ---- permutation-group oracle for the six finite stabiliser types ----------

using Perm = std::vector<int>;

inline Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline Perm inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
  return c;
}

using PermGroup = std::set<Perm>;

inline PermGroup closure(const std::vector<Perm>& gens, int n) {
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  PermGroup g{id};
  std::vector<Perm> todo{id};
  while (!todo.empty()) {
    Perm x = todo.back();
    todo.pop_back();
    for (const auto& s : gens) {
      Perm y = compose(s, x);
      if (g.insert(y).second) todo.push_back(y);
    }
  }
  return g;
}

// Concrete permutation model of each type.
inline PermGroup model(FiniteGroupType t) {
  using T = FiniteGroupType;
  switch (t) {
    case T::C1: return closure({}, 4);
    case T::C2: return closure({{1, 0, 2, 3}}, 4);
    case T::C3: return closure({{1, 2, 0, 3}}, 4);
    case T::D2: return closure({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4);
    case T::D3: return closure({{1, 2, 0, 3}, {1, 0, 2, 3}}, 4);
    case T::A4: return closure({{1, 2, 0, 3}, {1, 0, 3, 2}}, 4);
  }
  return {};
}

inline bool is_subgroup(const PermGroup& h, const PermGroup& g) {
  for (const auto& x : h)
    if (!g.count(x)) return false;
  for (const auto& x : h)
    for (const auto& y : h)
      if (!h.count(compose(x, y))) return false;
  return true;
}

inline std::vector<PermGroup> subgroups_of_order(const PermGroup& g, std::size_t order) {
  std::set<PermGroup> out;
  std::vector<Perm> el(g.begin(), g.end());
  for (const auto& a : el)
    for (const auto& b : el) {
      PermGroup h = closure({a, b}, static_cast<int>(a.size()));
      if (h.size() == order) out.insert(h);
    }
  return {out.begin(), out.end()};
}

inline PermGroup centre(const PermGroup& g) {
  PermGroup z;
  for (const auto& x : g) {
    bool central = true;
    for (const auto& y : g)
      if (compose(x, y) != compose(y, x)) central = false;
    if (central) z.insert(x);
  }
  return z;
}

inline PermGroup normaliser(const PermGroup& g, const PermGroup& h) {
  PermGroup n;
  for (const auto& x : g) {
    bool ok = true;
    for (const auto& y : h)
      if (!h.count(compose(compose(x, y), inverse(x)))) ok = false;
    if (ok) n.insert(x);
  }
  return n;
}

inline int element_order(const Perm& p) {
  Perm x = p;
  int k = 1;
  Perm id(p.size());
  std::iota(id.begin(), id.end(), 0);
  while (x != id) {
    x = compose(p, x);
    ++k;
  }
  return k;
}

// Isomorphism type among the six, from the order and the element orders.
inline FiniteGroupType identify(const PermGroup& g) {
  using T = FiniteGroupType;
  switch (g.size()) {
    case 1: return T::C1;
    case 2: return T::C2;
    case 3: return T::C3;
    case 4: {
      for (const auto& x : g)
        if (element_order(x) == 4) throw std::logic_error("cyclic group of order 4");
      return T::D2;
    }
    case 6: {
      for (const auto& x : g)
        if (element_order(x) == 6) throw std::logic_error("cyclic group of order 6");
      return T::D3;
    }
    case 12: return T::A4;
  }
  throw std::logic_error("unexpected group order");
}

inline std::vector<PermGroup> sylow_subgroups(const PermGroup& g, int ell) {
  std::size_t pk = 1;
  while (g.size() % (pk * ell) == 0) pk *= ell;
  return subgroups_of_order(g, pk);
}

inline FiniteGroupType oracle_sylow_centre_normaliser(FiniteGroupType t, int ell) {
  PermGroup g = model(t);
  auto syl = sylow_subgroups(g, ell);
  return identify(normaliser(g, centre(syl.front())));
}

// The centre of one Sylow subgroup is the centre of every Sylow subgroup containing it.
inline bool oracle_ell_normal(FiniteGroupType t, int ell) {
  PermGroup g = model(t);
  auto syl = sylow_subgroups(g, ell);
  for (const auto& p : syl) {
    PermGroup z = centre(p);
    for (const auto& q : syl)
      if (is_subgroup(z, q) && centre(q) != z) return false;
  }
  return true;
}

inline bool oracle_merge(FiniteGroupType sigma, FiniteGroupType tau, int ell) {
  if (sigma == tau) return true;
  return oracle_ell_normal(sigma, ell) && oracle_sylow_centre_normaliser(sigma, ell) == tau;
}

}  // namespace testsupport

#include "bianchi/equivariant.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bianchi {

const std::vector<Hemisphere>& Transporter::through(const UhsPoint& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(p, finder_.through(p)).first->second;
}

std::vector<MoebiusElt> Transporter::between(const UhsPoint& p, const UhsPoint& q) {
  if (p.is_cusp() || q.is_cusp()) throw std::domain_error("transporters between cusps are not finite");
  const RingBasis& r = finder_.basis();
  std::vector<MoebiusElt> out;
  if (p.rsq == q.rsq) {
    if (auto d = to_ring(q.z - p.z)) out.push_back(MoebiusElt::translation(*d));
  }
  for (const auto& h : through(p)) {
    UhsPoint x = apply(h.pairing, p);
    if (x.rsq != q.rsq) continue;
    if (auto d = to_ring(q.z - x.z)) out.push_back(MoebiusElt::translation(*d) * h.pairing);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  (void)r;
  return out;
}

FiniteSubgroup Transporter::stabiliser(const UhsPoint& p) {
  return subgroup_from_elements(between(p, p), finder_.basis());
}

int EquivComplex::find_point(const UhsPoint& normalised) const {
  auto it = std::lower_bound(points.begin(), points.end(), normalised);
  if (it == points.end() || !(*it == normalised)) return -1;
  return static_cast<int>(it - points.begin());
}

const std::vector<EquivCell>& EquivComplex::cells(int dim) const {
  switch (dim) {
    case 0: return vertices;
    case 1: return edges;
    case 2: return faces;
  }
  throw std::out_of_range("cell dimension must be 0, 1 or 2");
}

std::pair<int, int> EquivComplex::edge_of(const VRef& p, const VRef& q) const {
  auto ce = canonical_edge(p, q);
  auto it = edge_index.find(ce.key);
  if (it == edge_index.end()) throw std::logic_error("segment is not an edge of the refined complex");
  return {it->second, ce.reversed ? -1 : 1};
}

namespace {

Rational cross2(const QuadElem& o, const QuadElem& p, const QuadElem& q) {
  return (p.a - o.a) * (q.b - o.b) - (p.b - o.b) * (q.a - o.a);
}

Rational twice_area(const std::vector<UhsPoint>& pts) {
  Rational s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const QuadElem& p = pts[i].z;
    const QuadElem& q = pts[(i + 1) % pts.size()].z;
    s += p.a * q.b - p.b * q.a;
  }
  return s;
}

MoebiusElt conjugate_by_shift(const MoebiusElt& g, const Shift& s) {
  const RingBasis& r = g.basis();
  return MoebiusElt::translation(r, s) * g * MoebiusElt::translation(r, -s);
}

// Elements mapping the polygon (as a set of actual points) onto itself.
std::vector<MoebiusElt> polygon_symmetries(Transporter& tr, const std::vector<UhsPoint>& poly) {
  std::set<UhsPoint> pset(poly.begin(), poly.end());
  const UhsPoint* p0 = nullptr;
  for (const auto& p : poly)
    if (!p.is_cusp()) {
      p0 = &p;
      break;
    }
  if (!p0) throw std::logic_error("cell without a vertex in the interior of the space");
  std::vector<MoebiusElt> out;
  for (const auto& q : poly) {
    if (q.rsq != p0->rsq) continue;
    for (const auto& g : tr.between(*p0, q)) {
      bool ok = true;
      for (const auto& x : poly)
        if (!pset.count(apply(g, x))) {
          ok = false;
          break;
        }
      if (ok) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Piece {
  int hemi;
  std::vector<UhsPoint> pts;  // actual points, counter-clockwise
};

class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(n), parity_(n, 1), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, p] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] *= p;
    return {root, parity_[x]};
  }
  // orientation of a corresponds to sign * orientation of b
  void unite(int a, int b, int sign, bool oriented) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if (oriented && pa * pb != sign)
        throw std::logic_error("a group element reverses the orientation of a cell it preserves");
      return;
    }
    if (rank_[ra] < rank_[rb]) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[rb] = ra;
    parity_[rb] = pa * pb * sign;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
  }

 private:
  std::vector<int> parent_, parity_, rank_;
};

}  // namespace

EquivComplex refine(const FloorComplex& fc) {
  const RingBasis& r = fc.basis;
  EquivComplex ec;
  ec.basis = r;
  ec.hemispheres = fc.hemispheres;
  ec.transporter = std::make_shared<Transporter>(r);
  Transporter& tr = *ec.transporter;

  std::set<UhsPoint> pts(fc.vertices.begin(), fc.vertices.end());
  std::vector<Piece> pieces;

  for (const auto& f : fc.faces) {
    const Hemisphere& S = fc.hemispheres[f.hemisphere];
    std::vector<UhsPoint> corners;
    for (const auto& vr : f.cycle) corners.push_back(fc.point(vr));
    const std::size_t k = corners.size();

    // split every edge at its highest point
    std::vector<UhsPoint> poly;
    for (std::size_t i = 0; i < k; ++i) {
      const UhsPoint& P = corners[i];
      const UhsPoint& Q = corners[(i + 1) % k];
      poly.push_back(P);
      QuadElem d = Q.z - P.z;
      Rational u = -bilinear(P.z - S.center, d) / d.norm();
      if (u > 0 && u < 1) {
        QuadElem z = P.z + d.scaled(u);
        UhsPoint X{z, S.rsq - (z - S.center).norm()};
        poly.push_back(X);
        pts.insert(normalize(X).first);
      }
    }

    // highest point of the face
    bool inside = true;
    for (std::size_t i = 0; i < k; ++i)
      if (cross2(corners[i].z, corners[(i + 1) % k].z, S.center) <= 0) inside = false;

    if (inside) {
      UhsPoint A{S.center, S.rsq};
      pts.insert(normalize(A).first);
      for (std::size_t i = 0; i < poly.size(); ++i)
        pieces.push_back(Piece{f.hemisphere, {A, poly[i], poly[(i + 1) % poly.size()]}});
      continue;
    }
    std::size_t top = 0;
    for (std::size_t i = 1; i < poly.size(); ++i)
      if (poly[i].rsq > poly[top].rsq) top = i;
    auto sym = polygon_symmetries(tr, poly);
    if (sym.size() <= 1) {
      pieces.push_back(Piece{f.hemisphere, poly});
      continue;
    }
    // fan from the highest boundary vertex, skipping vertices on its own sides
    const std::size_t n = poly.size();
    const UhsPoint& A = poly[top];
    const UhsPoint& nxt = poly[(top + 1) % n];
    const UhsPoint& prv = poly[(top + n - 1) % n];
    std::vector<std::size_t> rays;
    for (std::size_t j = 1; j < n; ++j) {
      std::size_t idx = (top + j) % n;
      if (cross2(A.z, nxt.z, poly[idx].z) == 0 || cross2(A.z, prv.z, poly[idx].z) == 0) continue;
      rays.push_back(j);
    }
    std::size_t start = 1;
    for (std::size_t ri = 0; ri <= rays.size(); ++ri) {
      std::size_t stop = ri < rays.size() ? rays[ri] : n - 1;
      Piece pc{f.hemisphere, {A}};
      for (std::size_t j = start; j <= stop; ++j) pc.pts.push_back(poly[(top + j) % n]);
      if (pc.pts.size() >= 3) pieces.push_back(std::move(pc));
      start = stop;
    }
  }

  ec.points.assign(pts.begin(), pts.end());
  auto vref = [&](const UhsPoint& p) {
    auto [np, s] = normalize(p);
    int id = ec.find_point(np);
    if (id < 0) throw std::logic_error("point of the floor missing from the vertex table: " + to_string(p));
    return VRef{id, s};
  };

  // faces
  std::vector<std::pair<std::vector<VRef>, EquivCell>> fcells;
  for (const auto& pc : pieces) {
    std::vector<VRef> cyc;
    for (const auto& p : pc.pts) cyc.push_back(vref(p));
    auto cf = canonical_face(cyc);
    EquivCell c;
    c.dim = 2;
    c.verts = cf.key;
    c.carrier = pc.hemi;
    c.carrier_shift = -cf.shift;
    fcells.emplace_back(cf.key, std::move(c));
  }
  std::sort(fcells.begin(), fcells.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [key, c] : fcells) {
    if (ec.face_index.count(key)) throw std::logic_error("duplicate face in refinement");
    ec.face_index[key] = static_cast<int>(ec.faces.size());
    ec.faces.push_back(std::move(c));
  }

  // edges
  std::map<EdgeKey, std::pair<int, int>> seen;
  for (const auto& f : ec.faces)
    for (std::size_t i = 0; i < f.verts.size(); ++i) {
      auto ce = canonical_edge(f.verts[i], f.verts[(i + 1) % f.verts.size()]);
      auto& cnt = seen[ce.key];
      (ce.reversed ? cnt.second : cnt.first)++;
    }
  for (const auto& [key, cnt] : seen) {
    if (cnt.first != 1 || cnt.second != 1)
      throw std::logic_error("refined edge is not shared by two faces with opposite orientations");
    ec.edge_index[key] = static_cast<int>(ec.edges.size());
    EquivCell c;
    c.dim = 1;
    c.verts = {key.first, key.second};
    ec.edges.push_back(std::move(c));
  }
  for (const auto& f : ec.faces) {
    std::vector<BoundaryEntry> bd;
    for (std::size_t i = 0; i < f.verts.size(); ++i) {
      auto [e, s] = ec.edge_of(f.verts[i], f.verts[(i + 1) % f.verts.size()]);
      bd.push_back(BoundaryEntry{e, s});
    }
    ec.face_boundary.push_back(std::move(bd));
  }

  // vertices and incidences
  ec.incidences.resize(ec.points.size());
  for (int i = 0; i < static_cast<int>(ec.points.size()); ++i) {
    EquivCell c;
    c.dim = 0;
    c.verts = {VRef{i, {}}};
    c.cusp = ec.points[i].is_cusp();
    ec.vertices.push_back(std::move(c));
  }
  for (int e = 0; e < static_cast<int>(ec.edges.size()); ++e)
    for (int end = 0; end < 2; ++end) {
      const VRef& vr = ec.edges[e].verts[end];
      ec.incidences[vr.v].push_back(Incidence{e, end, -vr.s});
    }

  // orbits, generated by the pairing of each face's carrier hemisphere
  ParityUnionFind uf0(static_cast<int>(ec.vertices.size()));
  ParityUnionFind uf1(static_cast<int>(ec.edges.size()));
  ParityUnionFind uf2(static_cast<int>(ec.faces.size()));
  for (int fi = 0; fi < static_cast<int>(ec.faces.size()); ++fi) {
    const EquivCell& f = ec.faces[fi];
    MoebiusElt g = ec.hemispheres[f.carrier].translated(f.carrier_shift).pairing;
    std::vector<UhsPoint> img;
    std::vector<VRef> iref;
    for (const auto& vr : f.verts) {
      img.push_back(apply(g, ec.point(vr)));
      iref.push_back(vref(img.back()));
    }
    for (std::size_t i = 0; i < f.verts.size(); ++i) uf0.unite(f.verts[i].v, iref[i].v, 1, false);
    for (std::size_t i = 0; i < f.verts.size(); ++i) {
      std::size_t j = (i + 1) % f.verts.size();
      auto [e1, s1] = ec.edge_of(f.verts[i], f.verts[j]);
      auto [e2, s2] = ec.edge_of(iref[i], iref[j]);
      uf1.unite(e1, e2, s1 * s2, true);
    }
    int orient = twice_area(img) > 0 ? 1 : -1;
    std::vector<VRef> icyc = iref;
    if (orient < 0) std::reverse(icyc.begin(), icyc.end());
    auto it = ec.face_index.find(canonical_face(icyc).key);
    if (it == ec.face_index.end()) throw std::logic_error("pairing image of a face piece is not a face piece");
    uf2.unite(fi, it->second, orient, true);
  }
  auto finish = [&](ParityUnionFind& uf, std::vector<EquivCell>& cells, int dim) {
    std::map<int, int> root_to_orbit;
    std::vector<int> root_parity_of_rep;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
      auto [root, par] = uf.find(i);
      auto [it, fresh] = root_to_orbit.emplace(root, static_cast<int>(ec.orbit_reps[dim].size()));
      if (fresh) {
        ec.orbit_reps[dim].push_back(i);
        ec.orbit_members[dim].emplace_back();
        root_parity_of_rep.push_back(par);
      }
      cells[i].orbit = it->second;
      cells[i].orbit_sign = par * root_parity_of_rep[it->second];
      ec.orbit_members[dim][it->second].push_back(i);
    }
  };
  finish(uf0, ec.vertices, 0);
  finish(uf1, ec.edges, 1);
  finish(uf2, ec.faces, 2);

  // stabilisers
  for (auto& v : ec.vertices) {
    if (v.cusp) {
      v.stabiliser = subgroup_from_elements({MoebiusElt::identity(r)}, r);
      continue;
    }
    v.stabiliser = tr.stabiliser(ec.points[v.verts[0].v]);
  }
  for (auto& e : ec.edges) {
    const VRef& p = e.verts[0];
    const VRef& q = e.verts[1];
    std::vector<MoebiusElt> fix{MoebiusElt::identity(r)};
    if (!ec.vertices[p.v].cusp && !ec.vertices[q.v].cusp) {
      UhsPoint qq = ec.point(q);
      for (const auto& g : ec.vertices[p.v].stabiliser.elements) {
        MoebiusElt h = conjugate_by_shift(g, p.s);
        if (!h.is_identity() && apply(h, qq) == qq) fix.push_back(h);
      }
    }
    e.stabiliser = subgroup_from_elements(fix, r);
  }
  for (auto& f : ec.faces) f.stabiliser = subgroup_from_elements({MoebiusElt::identity(r)}, r);
  return ec;
}

FiniteSubgroup setwise_stabiliser(const EquivComplex& ec, int dim, int index) {
  const EquivCell& c = ec.cells(dim)[index];
  std::vector<UhsPoint> poly;
  for (const auto& vr : c.verts) poly.push_back(ec.point(vr));
  return subgroup_from_elements(polygon_symmetries(*ec.transporter, poly), ec.basis);
}

QuotientComplex quotient(const EquivComplex& ec) {
  QuotientComplex qc;
  // vertex orbits without cusps
  std::vector<int> vrow(ec.orbit_count(0), -1);
  int nv = 0;
  for (int o = 0; o < ec.orbit_count(0); ++o)
    if (!ec.vertices[ec.orbit_reps[0][o]].cusp) vrow[o] = nv++;
  std::map<std::pair<int, int>, int> trunc_vertex;  // (edge orbit, end of representative)
  auto end_row = [&](int edge_orbit, int end) {
    const EquivCell& rep = ec.edges[ec.orbit_reps[1][edge_orbit]];
    int vo = ec.vertices[rep.verts[end].v].orbit;
    if (vrow[vo] >= 0) return vrow[vo];
    auto [it, fresh] = trunc_vertex.emplace(std::make_pair(edge_orbit, end), 0);
    if (fresh) it->second = nv++;
    return it->second;
  };

  const int ne_orb = ec.orbit_count(1);
  std::vector<std::vector<std::pair<int, int>>> d1cols(ne_orb);
  for (int o = 0; o < ne_orb; ++o) d1cols[o] = {{end_row(o, 1), 1}, {end_row(o, 0), -1}};

  // faces, with a cut edge at every cusp corner
  std::vector<std::vector<std::pair<int, int>>> d2cols;
  int ne = ne_orb;
  for (int o = 0; o < ec.orbit_count(2); ++o) {
    int fi = ec.orbit_reps[2][o];
    const EquivCell& f = ec.faces[fi];
    const auto& bd = ec.face_boundary[fi];
    const std::size_t k = f.verts.size();
    std::map<int, int> col;
    // end of the representative edge reached when walking segment i forwards (at its end) or backwards
    auto rep_end = [&](std::size_t i, bool at_far_end) {
      const EquivCell& e = ec.edges[bd[i].edge];
      int end = (bd[i].sign > 0) == at_far_end ? 1 : 0;
      if (e.orbit_sign < 0) end = 1 - end;
      return end;
    };
    for (std::size_t i = 0; i < k; ++i) {
      const EquivCell& e = ec.edges[bd[i].edge];
      col[e.orbit] += bd[i].sign * e.orbit_sign;
      std::size_t nxt = (i + 1) % k;
      if (ec.vertices[f.verts[nxt].v].cusp) {
        int from = end_row(e.orbit, rep_end(i, true));
        int to = end_row(ec.edges[bd[nxt].edge].orbit, rep_end(nxt, false));
        d1cols.push_back({{to, 1}, {from, -1}});
        col[ne++] += 1;
        ++qc.truncation_edges;
      }
    }
    std::vector<std::pair<int, int>> c;
    for (auto [row, v] : col)
      if (v != 0) c.emplace_back(row, v);
    d2cols.push_back(std::move(c));
  }
  qc.truncation_vertices = static_cast<int>(trunc_vertex.size());
  qc.cell_count = {nv, ne, static_cast<int>(d2cols.size())};
  for (auto& c : d1cols) {
    std::map<int, int> acc;
    for (auto [row, v] : c) acc[row] += v;
    c.clear();
    for (auto [row, v] : acc)
      if (v != 0) c.emplace_back(row, v);
  }
  qc.d1 = SparseMatrix{nv, ne, std::move(d1cols)};
  qc.d2 = SparseMatrix{ne, qc.cell_count[2], std::move(d2cols)};
  return qc;
}

int rational_rank(const SparseMatrix& m) {
  std::map<int, std::map<int, Rational>> pivots;  // lowest row -> reduced column
  int rank = 0;
  for (const auto& col : m.columns) {
    std::map<int, Rational> v;
    for (auto [row, x] : col)
      if (x != 0) v[row] += x;
    for (auto it = v.begin(); it != v.end();)
      it = it->second == 0 ? v.erase(it) : std::next(it);
    while (!v.empty()) {
      int low = v.rbegin()->first;
      auto pit = pivots.find(low);
      if (pit == pivots.end()) {
        pivots.emplace(low, std::move(v));
        ++rank;
        break;
      }
      Rational factor = v.rbegin()->second / pit->second.rbegin()->second;
      for (const auto& [row, x] : pit->second) {
        Rational& y = v[row];
        y -= factor * x;
        if (y == 0) v.erase(row);
      }
    }
  }
  return rank;
}

std::array<int, 3> quotient_cohomology(const QuotientComplex& qc) {
  int r1 = rational_rank(qc.d1), r2 = rational_rank(qc.d2);
  return {qc.cell_count[0] - r1, qc.cell_count[1] - r1 - r2, qc.cell_count[2] - r2};
}

}  // namespace bianchi

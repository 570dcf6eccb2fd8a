#include "bianchi/swan.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bianchi {

namespace {

std::optional<Hemisphere> make_if_unimodular(const RingElem& mu, const RingElem& lambda) {
  auto bz = bezout(lambda, mu);
  if (!bz) return std::nullopt;
  Hemisphere h;
  h.mu = mu;
  h.lambda = lambda;
  QuadElem c = to_field(lambda) / to_field(mu);
  h.center = c;
  h.rsq = 1 / Rational(mu.norm());
  h.pairing = MoebiusElt(-bz->first, -bz->second, mu, -lambda);
  return h;
}

double fd(const Rational& q) { return q.get_d(); }

// sqrt(n - t^2/4): scale of the omega-coordinate b in the Euclidean metric
double b_scale(const RingBasis& r) {
  return std::sqrt(static_cast<double>(r.n()) - static_cast<double>(r.t() * r.t()) / 4.0);
}

}  // namespace

Hemisphere Hemisphere::make(const RingElem& mu, const RingElem& lambda) {
  auto h = make_if_unimodular(mu, lambda);
  if (!h) throw std::domain_error("(" + to_string(lambda) + ", " + to_string(mu) + ") is not unimodular");
  return *h;
}

Hemisphere Hemisphere::translated(const Shift& s) const {
  Hemisphere h = *this;
  const RingBasis& r = mu.basis;
  h.lambda = lambda + mu * shift_elem(r, s);
  h.center = center + s;
  h.pairing = pairing * MoebiusElt::translation(r, -s);
  return h;
}

Rational Hemisphere::power(const QuadElem& z) const { return (z - center).norm() - rsq; }

void HemisphereFinder::grow(std::int64_t bound) {
  const long t = basis_.t(), n = basis_.n();
  const double sb = b_scale(basis_);
  std::int64_t ymax = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(bound)) / sb)) + 1;
  std::vector<std::pair<std::int64_t, RingElem>> found;
  for (std::int64_t y = 0; y <= ymax; ++y) {
    double rem = static_cast<double>(bound) - sb * sb * static_cast<double>(y * y);
    if (rem < -1) continue;
    double half = std::sqrt(std::max(rem, 0.0)) + 1;
    double mid = static_cast<double>(t * y) / 2.0;
    std::int64_t x0 = static_cast<std::int64_t>(std::floor(mid - half));
    std::int64_t x1 = static_cast<std::int64_t>(std::ceil(mid + half));
    for (std::int64_t x = x0; x <= x1; ++x) {
      if (y == 0 && x <= 0) continue;
      std::int64_t nm = x * x - t * x * y + n * y * y;
      if (nm > bound) continue;
      found.emplace_back(nm, RingElem(basis_, Integer(static_cast<long>(x)), Integer(static_cast<long>(y))));
    }
  }
  std::sort(found.begin(), found.end());
  mus_.clear();
  for (auto& f : found) mus_.push_back(std::move(f.second));
  have_ = bound;
}

std::vector<RingElem> HemisphereFinder::mus_up_to(std::int64_t bound) {
  if (bound > have_) grow(std::max(bound, 2 * have_));
  std::vector<RingElem> out;
  for (const auto& mu : mus_) {
    if (mu.norm() > bound) break;
    out.push_back(mu);
  }
  return out;
}

std::vector<Hemisphere> HemisphereFinder::through(const UhsPoint& p, std::int64_t cusp_norm_bound) {
  return search(p, cusp_norm_bound, false);
}

std::vector<Hemisphere> HemisphereFinder::covering(const UhsPoint& p, std::int64_t cusp_norm_bound) {
  return search(p, cusp_norm_bound, true);
}

std::vector<Hemisphere> HemisphereFinder::search(const UhsPoint& p, std::int64_t cusp_norm_bound, bool strict) {
  std::int64_t nmax;
  if (p.is_cusp()) {
    nmax = cusp_norm_bound;
  } else {
    nmax = to_int64(floor_of(1 / p.rsq));
  }
  std::vector<Hemisphere> out;
  if (nmax < 1) return out;
  if (nmax > have_) grow(std::max(nmax, 2 * have_));
  const long t = basis_.t(), n = basis_.n();
  const double sb = b_scale(basis_);
  for (const auto& mu : mus_) {
    Integer nmu = mu.norm();
    if (nmu > nmax) break;
    Rational rho = 1 - Rational(nmu) * p.rsq;
    if (rho < 0 || (strict && rho == 0)) continue;
    QuadElem w = to_field(mu) * p.z;
    double wa = fd(w.a), wb = fd(w.b), dr = fd(rho);
    double db = std::sqrt(std::max(dr, 0.0)) / sb + 1e-9;
    std::int64_t y0 = static_cast<std::int64_t>(std::ceil(wb - db));
    std::int64_t y1 = static_cast<std::int64_t>(std::floor(wb + db));
    for (std::int64_t y = y0; y <= y1; ++y) {
      double dbv = wb - static_cast<double>(y);
      double rem = dr - sb * sb * dbv * dbv;
      if (rem < -1e-9) continue;
      double half = std::sqrt(std::max(rem, 0.0)) + 1e-9;
      double mid = wa - static_cast<double>(t) * dbv / 2.0;
      std::int64_t x0 = static_cast<std::int64_t>(std::ceil(mid - half));
      std::int64_t x1 = static_cast<std::int64_t>(std::floor(mid + half));
      for (std::int64_t x = x0; x <= x1; ++x) {
        RingElem lambda(basis_, Integer(static_cast<long>(x)), Integer(static_cast<long>(y)));
        Rational q = (w - to_field(lambda)).norm();
        if (strict ? !(q < rho) : !(q == rho)) continue;
        if (auto h = make_if_unimodular(mu, lambda)) out.push_back(std::move(*h));
      }
    }
  }
  (void)n;
  std::sort(out.begin(), out.end(), [](const Hemisphere& x, const Hemisphere& y) {
    if (x.mu != y.mu) return x.mu < y.mu;
    return x.lambda < y.lambda;
  });
  return out;
}

std::vector<Hemisphere> enumerate_hemispheres(const RingBasis& r, std::int64_t norm_bound) {
  HemisphereFinder finder(r);
  const long t = r.t(), n = r.n();
  std::vector<Hemisphere> out;
  for (const auto& mu : finder.mus_up_to(norm_bound)) {
    // Hermite basis {(A, 0), (B, D)} of the lattice mu*O in omega coordinates
    std::int64_t ma = to_int64(mu.a), mb = to_int64(mu.b);
    std::array<std::int64_t, 2> u{ma, mb}, v{-n * mb, ma - t * mb};
    while (v[1] != 0) {
      std::int64_t q = u[1] / v[1];
      u[0] -= q * v[0];
      u[1] -= q * v[1];
      std::swap(u, v);
    }
    std::int64_t D = std::abs(u[1]), A = std::abs(v[0]);
    if (A * D != to_int64(mu.norm())) throw std::logic_error("residue system of mu has the wrong size");
    for (std::int64_t i = 0; i < A; ++i)
      for (std::int64_t j = 0; j < D; ++j) {
        RingElem lambda(r, Integer(static_cast<long>(i)), Integer(static_cast<long>(j)));
        auto h = make_if_unimodular(mu, lambda);
        if (!h) continue;
        Shift s{to_int64(floor_of(h->center.a)), to_int64(floor_of(h->center.b))};
        out.push_back(s.is_zero() ? *h : h->translated(-s));
      }
  }
  std::sort(out.begin(), out.end(), [](const Hemisphere& x, const Hemisphere& y) {
    if (x.center != y.center) return x.center < y.center;
    return x.rsq > y.rsq;
  });
  return out;
}

CanonicalEdge canonical_edge(const VRef& p, const VRef& q) {
  auto candidate = [&](const Shift& t) {
    VRef a = p.shifted(-t), b = q.shifted(-t);
    bool rev = b < a;
    return std::make_tuple(rev ? EdgeKey{b, a} : EdgeKey{a, b}, rev, t);
  };
  auto c1 = candidate(p.s), c2 = candidate(q.s);
  auto& best = std::get<0>(c2) < std::get<0>(c1) ? c2 : c1;
  return CanonicalEdge{std::get<0>(best), std::get<1>(best), std::get<2>(best)};
}

CanonicalFace canonical_face(const std::vector<VRef>& cycle) {
  CanonicalFace best;
  bool have = false;
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    Shift t = cycle[i].s;
    std::vector<VRef> seq;
    seq.reserve(k);
    for (std::size_t j = 0; j < k; ++j) seq.push_back(cycle[(i + j) % k].shifted(-t));
    if (!have || seq < best.key) {
      best.key = std::move(seq);
      best.shift = t;
      have = true;
    }
  }
  return best;
}

int FloorComplex::find_vertex(const UhsPoint& normalised) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), normalised);
  if (it == vertices.end() || !(*it == normalised)) return -1;
  return static_cast<int>(it - vertices.begin());
}

bool FloorComplex::same_cells(const FloorComplex& o) const {
  if (!(basis == o.basis) || vertices != o.vertices || cusps != o.cusps) return false;
  if (edges.size() != o.edges.size() || faces.size() != o.faces.size()) return false;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (!(edges[i].ends == o.edges[i].ends)) return false;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (faces[i].cycle != o.faces[i].cycle) return false;
    const Hemisphere& h1 = hemispheres[faces[i].hemisphere];
    const Hemisphere& h2 = o.hemispheres[o.faces[i].hemisphere];
    if (h1.center != h2.center || h1.rsq != h2.rsq) return false;
  }
  return true;
}

namespace {

struct P2 {
  Rational a, b;
  bool operator==(const P2& o) const { return a == o.a && b == o.b; }
};

struct Cell {
  std::vector<P2> pts;
  std::vector<std::array<double, 2>> approx;
};

struct Translate {
  int rep;
  Shift s;
  double ca, cb, rsq;
};

Rational cross(const P2& o, const P2& p, const P2& q) {
  return (p.a - o.a) * (q.b - o.b) - (p.b - o.b) * (q.a - o.a);
}

Rational twice_area(const std::vector<P2>& pts) {
  Rational s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const P2& p = pts[i];
    const P2& q = pts[(i + 1) % pts.size()];
    s += p.a * q.b - p.b * q.a;
  }
  return s;
}

void refresh_approx(Cell& c) {
  c.approx.resize(c.pts.size());
  for (std::size_t i = 0; i < c.pts.size(); ++i) c.approx[i] = {fd(c.pts[i].a), fd(c.pts[i].b)};
}

// keep the part where alpha*a + beta*b + gamma <= 0
void clip(Cell& c, const Rational& alpha, const Rational& beta, const Rational& gamma) {
  std::vector<P2> out;
  const std::size_t k = c.pts.size();
  std::vector<Rational> f(k);
  for (std::size_t i = 0; i < k; ++i) f[i] = alpha * c.pts[i].a + beta * c.pts[i].b + gamma;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = (i + 1) % k;
    if (f[i] <= 0) out.push_back(c.pts[i]);
    if ((f[i] < 0 && f[j] > 0) || (f[i] > 0 && f[j] < 0)) {
      Rational lam = f[i] / (f[i] - f[j]);
      out.push_back(P2{c.pts[i].a + lam * (c.pts[j].a - c.pts[i].a), c.pts[i].b + lam * (c.pts[j].b - c.pts[i].b)});
    }
  }
  std::vector<P2> dedup;
  for (auto& p : out)
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(std::move(p));
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  c.pts = std::move(dedup);
  refresh_approx(c);
}

void drop_collinear(std::vector<P2>& pts) {
  bool changed = true;
  while (changed && pts.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const P2& prev = pts[(i + pts.size() - 1) % pts.size()];
      const P2& next = pts[(i + 1) % pts.size()];
      if (pts[i] == next || cross(prev, pts[i], next) == 0) {
        pts.erase(pts.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
}

Rational upper_rational(double x) {
  const double scale = 1 << 20;
  double v = std::ceil((x * (1 + 1e-6) + 1e-9) * scale);
  return make_rational(Integer(static_cast<long>(v)), Integer(1 << 20));
}

}  // namespace

FloorAttempt floor_at_bound(const RingBasis& r, std::int64_t bound, std::int64_t cusp_norm_ceiling) {
  const long t = r.t(), n = r.n();
  const double sb = b_scale(r);
  const double kb = 1.0 / sb;
  const double ka = 1.0 + static_cast<double>(t) * kb / 2.0;
  std::vector<Hemisphere> reps = enumerate_hemispheres(r, bound);

  // translates whose disks can meet a disk centred in the unit square
  const double reach_a = 2 * ka + 0.01, reach_b = 2 * kb + 0.01;
  std::vector<Translate> trs;
  const std::int64_t sa_lo = static_cast<std::int64_t>(std::floor(-reach_a)) - 1;
  const std::int64_t sa_hi = static_cast<std::int64_t>(std::ceil(1 + reach_a)) + 1;
  const std::int64_t sb_lo = static_cast<std::int64_t>(std::floor(-reach_b)) - 1;
  const std::int64_t sb_hi = static_cast<std::int64_t>(std::ceil(1 + reach_b)) + 1;
  for (int k = 0; k < static_cast<int>(reps.size()); ++k) {
    double ca = fd(reps[k].center.a), cb = fd(reps[k].center.b), rs = fd(reps[k].rsq);
    for (std::int64_t sa = sa_lo; sa <= sa_hi; ++sa)
      for (std::int64_t sbb = sb_lo; sbb <= sb_hi; ++sbb) {
        double a = ca + static_cast<double>(sa), b = cb + static_cast<double>(sbb);
        if (a < -reach_a || a > 1 + reach_a || b < -reach_b || b > 1 + reach_b) continue;
        trs.push_back(Translate{k, Shift{sa, sbb}, a, b, rs});
      }
  }
  // bucket grid over the translates
  const double cell = 0.25;
  const double ga0 = -reach_a - 1, gb0 = -reach_b - 1;
  const int gna = static_cast<int>(std::ceil((2 * reach_a + 3) / cell)) + 1;
  const int gnb = static_cast<int>(std::ceil((2 * reach_b + 3) / cell)) + 1;
  std::vector<std::vector<int>> grid(static_cast<std::size_t>(gna * gnb));
  auto gidx = [&](double a, double b) {
    int ia = std::clamp(static_cast<int>(std::floor((a - ga0) / cell)), 0, gna - 1);
    int ib = std::clamp(static_cast<int>(std::floor((b - gb0) / cell)), 0, gnb - 1);
    return std::make_pair(ia, ib);
  };
  for (int i = 0; i < static_cast<int>(trs.size()); ++i) {
    auto [ia, ib] = gidx(trs[i].ca, trs[i].cb);
    grid[static_cast<std::size_t>(ia * gnb + ib)].push_back(i);
  }

  auto qd = [&](double da, double db) { return da * da - static_cast<double>(t) * da * db + static_cast<double>(n) * db * db; };
  auto qx = [&](const Rational& a, const Rational& b) { return Rational(a * a - t * a * b + n * b * b); };

  FloorAttempt att;
  att.floor.basis = r;
  att.floor.norm_bound = bound;
  std::vector<std::pair<int, std::vector<P2>>> cells;
  Rational total_area = 0;
  bool covered = true;

  for (int k = 0; k < static_cast<int>(reps.size()); ++k) {
    const Hemisphere& S = reps[k];
    const double ca = fd(S.center.a), cb = fd(S.center.b), rs = fd(S.rsq), rr = std::sqrt(rs);
    // neighbours whose disks overlap the disk of S
    const double qa = (rr + 1) * ka, qb = (rr + 1) * kb;
    auto lo = gidx(ca - qa, cb - qb), hi = gidx(ca + qa, cb + qb);
    std::vector<int> cand;
    for (int ia = lo.first; ia <= hi.first; ++ia)
      for (int ib = lo.second; ib <= hi.second; ++ib)
        for (int i : grid[static_cast<std::size_t>(ia * gnb + ib)]) {
          const Translate& T = trs[i];
          if (T.rep == k && T.s.is_zero()) continue;
          double rt = std::sqrt(T.rsq);
          if (qd(T.ca - ca, T.cb - cb) < (rr + rt) * (rr + rt) + 1e-9) cand.push_back(i);
        }
    std::sort(cand.begin(), cand.end(), [&](int x, int y) {
      if (trs[x].rsq != trs[y].rsq) return trs[x].rsq > trs[y].rsq;
      return x < y;
    });

    Rational ea = upper_rational(rr * ka), eb = upper_rational(rr * kb);
    Cell c;
    c.pts = {P2{S.center.a - ea, S.center.b - eb}, P2{S.center.a + ea, S.center.b - eb},
             P2{S.center.a + ea, S.center.b + eb}, P2{S.center.a - ea, S.center.b + eb}};
    refresh_approx(c);
    const Rational ks = qx(S.center.a, S.center.b) - S.rsq;
    for (int i : cand) {
      const Translate& T = trs[i];
      double da = T.ca - ca, db = T.cb - cb;
      double al = 2 * da - static_cast<double>(t) * db;
      double be = 2 * static_cast<double>(n) * db - static_cast<double>(t) * da;
      double ga = (qd(ca, cb) - rs) - (qd(T.ca, T.cb) - T.rsq);
      double mx = -1e300;
      for (auto& p : c.approx) mx = std::max(mx, al * p[0] + be * p[1] + ga);
      if (mx < -1e-9) continue;
      Rational ta = reps[T.rep].center.a + Rational(static_cast<long>(T.s.a));
      Rational tb = reps[T.rep].center.b + Rational(static_cast<long>(T.s.b));
      Rational dA = ta - S.center.a, dB = tb - S.center.b;
      Rational alpha = 2 * dA - t * dB;
      Rational beta = 2 * n * dB - t * dA;
      Rational gamma = ks - (qx(ta, tb) - reps[T.rep].rsq);
      clip(c, alpha, beta, gamma);
      if (c.pts.size() < 3) break;
    }
    if (c.pts.size() < 3) continue;
    drop_collinear(c.pts);
    if (c.pts.size() < 3) continue;
    Rational a2 = twice_area(c.pts);
    if (a2 == 0) continue;
    if (a2 < 0) std::reverse(c.pts.begin(), c.pts.end()), a2 = -a2;
    total_area += a2 / 2;
    for (const auto& p : c.pts)
      if (S.power(QuadElem(r, p.a, p.b)) > 0) covered = false;
    cells.emplace_back(k, std::move(c.pts));
  }
  if (total_area != 1) covered = false;
  att.covered = covered;
  if (!covered) return att;

  // vertices and faces
  std::set<UhsPoint> vset;
  for (auto& [k, pts] : cells)
    for (auto& p : pts) {
      QuadElem z(r, p.a, p.b);
      vset.insert(normalize(UhsPoint{z, -reps[k].power(z)}).first);
    }
  FloorComplex& fc = att.floor;
  fc.vertices.assign(vset.begin(), vset.end());
  for (auto& [k, pts] : cells) {
    FloorFace f;
    f.hemisphere = static_cast<int>(fc.hemispheres.size());
    fc.hemispheres.push_back(reps[k]);
    for (auto& p : pts) {
      QuadElem z(r, p.a, p.b);
      auto [np, s] = normalize(UhsPoint{z, -reps[k].power(z)});
      f.cycle.push_back(VRef{fc.find_vertex(np), s});
    }
    fc.faces.push_back(std::move(f));
  }
  std::map<EdgeKey, std::pair<int, int>> seen;  // forward / backward counts
  for (auto& f : fc.faces)
    for (std::size_t i = 0; i < f.cycle.size(); ++i) {
      auto ce = canonical_edge(f.cycle[i], f.cycle[(i + 1) % f.cycle.size()]);
      auto& cnt = seen[ce.key];
      (ce.reversed ? cnt.second : cnt.first)++;
    }
  for (auto& [key, cnt] : seen) {
    if (cnt.first != 1 || cnt.second != 1)
      throw std::logic_error("floor edge is not shared by exactly two faces with opposite orientations");
    fc.edges.push_back(FloorEdge{key});
  }
  for (int i = 0; i < static_cast<int>(fc.vertices.size()); ++i)
    if (fc.vertices[i].is_cusp()) fc.cusps.push_back(i);

  // certification: no hemisphere of any norm lies strictly above a vertex
  HemisphereFinder finder(r);
  for (const auto& v : fc.vertices) {
    auto cov = finder.covering(v, cusp_norm_ceiling);
    for (const auto& h : cov) {
      std::int64_t nm = to_int64(h.mu.norm());
      if (nm <= bound) throw std::logic_error("vertex lies below a hemisphere inside the bound");
      att.violating_norm = std::max(att.violating_norm, nm);
    }
  }
  return att;
}

FloorComplex compute_floor(const RingBasis& r, const SwanOptions& opts) {
  std::int64_t bound = std::max<std::int64_t>(1, opts.initial_bound);
  for (;;) {
    if (bound > opts.max_bound) throw std::runtime_error("norm bound exceeded " + std::to_string(opts.max_bound) + " before the floor stabilised");
    FloorAttempt att = floor_at_bound(r, bound, opts.cusp_norm_ceiling);
    if (!att.covered) {
      bound *= 2;
      continue;
    }
    if (att.violating_norm > 0) {
      bound = std::max(2 * bound, att.violating_norm);
      continue;
    }
    if (!opts.witnesses) return att.floor;
    bool stable = true;
    for (std::int64_t w : {bound + 1, bound + 2}) {
      FloorAttempt wit = floor_at_bound(r, w, opts.cusp_norm_ceiling);
      if (!wit.covered || wit.violating_norm > 0 || !wit.floor.same_cells(att.floor)) {
        stable = false;
        bound = w;
        break;
      }
      att.floor.witness_bounds.push_back(w);
    }
    if (stable) return att.floor;
  }
}

std::vector<SidePairing> side_pairings(const FloorComplex& fc) {
  std::map<std::vector<VRef>, std::pair<int, Shift>> by_key;
  for (int i = 0; i < static_cast<int>(fc.faces.size()); ++i) {
    auto cf = canonical_face(fc.faces[i].cycle);
    by_key[cf.key] = {i, cf.shift};
  }
  std::vector<SidePairing> out;
  for (int i = 0; i < static_cast<int>(fc.faces.size()); ++i) {
    const FloorFace& f = fc.faces[i];
    const MoebiusElt& g = fc.hemispheres[f.hemisphere].pairing;
    std::vector<VRef> img;
    std::vector<P2> pts;
    for (const auto& vr : f.cycle) {
      UhsPoint q = apply(g, fc.point(vr));
      auto [np, s] = normalize(q);
      int id = fc.find_vertex(np);
      if (id < 0) throw std::logic_error("side pairing maps a floor vertex off the floor");
      img.push_back(VRef{id, s});
      pts.push_back(P2{q.z.a, q.z.b});
    }
    if (twice_area(pts) < 0) std::reverse(img.begin(), img.end());
    auto cf = canonical_face(img);
    auto it = by_key.find(cf.key);
    if (it == by_key.end()) throw std::logic_error("side pairing image is not a floor face");
    out.push_back(SidePairing{i, it->second.first, cf.shift - it->second.second, g});
  }
  return out;
}

}  // namespace bianchi

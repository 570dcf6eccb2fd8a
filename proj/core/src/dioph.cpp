#include "bianchi/dioph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace bianchi {

std::string to_string(QuotientStatus s) { return s == QuotientStatus::Certified ? "certified" : "inconclusive"; }

MoebiusElt standard_beta(const RingBasis& r) {
  return MoebiusElt(RingElem(r, 0, 0), RingElem(r, -1, 0), RingElem(r, 1, 0), RingElem(r, 1, 0));
}

MoebiusElt standard_gamma(const RingBasis& r) {
  return MoebiusElt(RingElem(r, 0, 0), RingElem(r, 1, 0), RingElem(r, -1, 0), RingElem(r, 0, 0));
}

MoebiusElt alpha_for_m2(const RingBasis& r) {
  if (r.m != 2) throw std::domain_error("alpha = [[1, w], [w, -1]] has determinant 1 only for m = 2");
  return MoebiusElt(RingElem(r, 1, 0), RingElem(r, 0, 1), RingElem(r, 0, 1), RingElem(r, -1, 0));
}

DiophInstance build_instance(long m, const MoebiusElt& beta) {
  RingBasis r = RingBasis::for_m(m);
  if (r.kind != OmegaCase::Plain)
    throw std::domain_error("the centraliser equations assume w = sqrt(-m), i.e. m = 1, 2 mod 4; m = " +
                            std::to_string(m) + " is unsupported");
  if (!(beta.basis() == r)) throw BasisMismatch();
  if (beta.b().is_zero())
    throw std::domain_error("upper right entry of beta is zero; conjugate beta so that it becomes non-zero");
  DiophInstance inst;
  inst.m = m;
  inst.beta = beta;
  QuadElem f = to_field(beta.b());
  QuadElem q = to_field(beta.c()) / f;
  QuadElem p = (to_field(beta.d()) - to_field(beta.a())) / f;
  inst.R = q.a;
  inst.J = q.b;
  inst.rho = p.a;
  inst.iota = p.b;
  return inst;
}

Rational re_residual(const DiophInstance& in, const Integer& j, const Integer& k, const Integer& l, const Integer& n) {
  const Integer m = in.m;
  Rational v = j * j - m * k * k;
  v += (j * l - m * k * n) * in.rho;
  v -= (j * n + k * l) * m * in.iota;
  v += (-l * l + m * n * n) * in.R;
  v += 2 * m * in.J * l * n;
  return v - 1;
}

Rational im_residual(const DiophInstance& in, const Integer& j, const Integer& k, const Integer& l, const Integer& n) {
  const Integer m = in.m;
  Rational v = 2 * j * k;
  v += (j * n + k * l) * in.rho;
  v += (j * l - m * k * n) * in.iota;
  v -= 2 * in.R * l * n;
  v -= in.J * l * l;
  v += in.J * m * n * n;
  return v;
}

std::optional<MoebiusElt> centraliser_matrix(const DiophInstance& inst, const Integer& j, const Integer& k,
                                              const Integer& l, const Integer& n) {
  const RingBasis& r = inst.beta.basis();
  QuadElem a(r, Rational(j), Rational(k));
  QuadElem b(r, Rational(l), Rational(n));
  QuadElem c = QuadElem(r, inst.R, inst.J) * b;
  QuadElem d = a + b * QuadElem(r, inst.rho, inst.iota);
  auto ra = to_ring(a), rb = to_ring(b), rc = to_ring(c), rd = to_ring(d);
  if (!rc || !rd) return std::nullopt;
  if (!(*ra * *rd - *rb * *rc == RingElem(r, 1, 0))) return std::nullopt;
  return MoebiusElt(*ra, *rb, *rc, *rd);
}

std::vector<std::pair<Integer, Integer>> solve_pell(long m, std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("bound must be non-negative");
  std::vector<std::pair<Integer, Integer>> out;
  for (std::int64_t k = -bound; k <= bound; ++k) {
    Integer kk = static_cast<long>(k);
    Integer rhs = 3 * Integer(m) * kk * kk + 1;
    Integer j;
    if (!integer_sqrt(rhs, j)) continue;
    out.emplace_back(j, kk);
    out.emplace_back(-j, kk);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CentralizerSolution> solve_case2(long m, std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("bound must be non-negative");
  RingBasis r = RingBasis::for_m(m);
  DiophInstance inst = build_instance(m, standard_beta(r));
  std::vector<CentralizerSolution> out;
  for (std::int64_t k = -bound; k <= bound; ++k)
    for (std::int64_t n = -bound; n <= bound; ++n) {
      if (n == 2 * k) continue;
      Integer K = static_cast<long>(k), N = static_cast<long>(n);
      Rational q = make_rational(K - 2 * N, 2 * K - N);
      Rational den = 1 + q * (q - 1);
      Rational l2 = (m * K * K + m * N * N - m * K * N + 1) / den;
      Rational root;
      if (!rational_sqrt(l2, root) || !is_integer(root)) continue;
      for (int sgn : {1, -1}) {
        Integer L = sgn * root.get_num();
        if (sgn < 0 && L == 0) continue;
        Rational jq = L * q;
        if (!is_integer(jq)) continue;
        Integer J = jq.get_num();
        if (re_residual(inst, J, K, L, N) != 0 || im_residual(inst, J, K, L, N) != 0)
          throw std::logic_error("second-case solution does not satisfy the centraliser equations");
        auto mat = centraliser_matrix(inst, J, K, L, N);
        if (!mat) throw std::logic_error("second-case solution does not give a matrix over the ring");
        if (!(*mat * inst.beta == inst.beta * *mat)) throw std::logic_error("solution does not commute with beta");
        out.push_back(CentralizerSolution{J, K, L, N, *mat});
      }
    }
  std::sort(out.begin(), out.end(), [](const CentralizerSolution& x, const CentralizerSolution& y) {
    return std::tie(x.k, x.n, x.l) < std::tie(y.k, y.n, y.l);
  });
  return out;
}

namespace {

// Coordinates (u, v) of x = u + v sqrt(-m) and back.
std::pair<Rational, Rational> to_sqrt_coords(const QuadElem& x) {
  if (x.basis.kind == OmegaCase::Plain) return {x.a, x.b};
  Rational half = make_rational(1, 2);
  return {x.a - x.b * half, x.b * half};
}

QuadElem from_sqrt_coords(const RingBasis& r, const Rational& u, const Rational& v) {
  if (r.kind == OmegaCase::Plain) return QuadElem(r, u, v);
  return QuadElem(r, u + v, 2 * v);
}

std::optional<QuadElem> field_sqrt(const QuadElem& x) {
  const RingBasis& r = x.basis;
  auto [u, v] = to_sqrt_coords(x);
  Rational nrm;
  if (!rational_sqrt(u * u + r.m * v * v, nrm)) return std::nullopt;
  Rational p2 = (u + nrm) / 2, q2 = (nrm - u) / (2 * r.m);
  Rational p, q;
  if (!rational_sqrt(p2, p) || !rational_sqrt(q2, q)) return std::nullopt;
  if (2 * p * q != v) q = -q;
  QuadElem s = from_sqrt_coords(r, p, q);
  if (!(s * s == x)) return std::nullopt;
  return s;
}

MoebiusElt transpose(const MoebiusElt& g) { return MoebiusElt(g.a(), g.c(), g.b(), g.d()); }

template <class F>
void scan_box(const RingBasis& r, std::int64_t bound, F&& f) {
  for (std::int64_t x = -bound; x <= bound; ++x)
    for (std::int64_t y = -bound; y <= bound; ++y)
      f(RingElem(r, Integer(static_cast<long>(x)), Integer(static_cast<long>(y))));
}

std::vector<MoebiusElt> sorted_unique(std::vector<MoebiusElt> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<MoebiusElt> commuting_elements(const MoebiusElt& beta, std::int64_t bound) {
  if (beta.b().is_zero()) {
    if (beta.c().is_zero()) throw std::domain_error("diagonal element: centraliser search needs a non-zero off-diagonal entry");
    std::vector<MoebiusElt> out;
    for (const auto& x : commuting_elements(transpose(beta), bound)) out.push_back(transpose(x));
    return sorted_unique(std::move(out));
  }
  const RingBasis& r = beta.basis();
  const QuadElem e = to_field(beta.a()), f = to_field(beta.b()), g = to_field(beta.c()), h = to_field(beta.d());
  const QuadElem t = e + h;
  const QuadElem four(r, Rational(4), Rational(0));
  const QuadElem disc_coef = t * t - four;
  std::vector<MoebiusElt> out;
  // X = p + q beta with upper right entry q f = b
  scan_box(r, bound, [&](const RingElem& b) {
    QuadElem q = to_field(b) / f;
    auto s = field_sqrt(q * q * disc_coef + four);
    if (!s) return;
    for (const QuadElem& root : {*s, QuadElem(r, -s->a, -s->b)}) {
      QuadElem p = (root - q * t).scaled(make_rational(1, 2));
      auto A = to_ring(p + q * e), C = to_ring(q * g), D = to_ring(p + q * h);
      if (!A || !C || !D) continue;
      if (!(*A * *D - b * *C == RingElem(r, 1, 0))) continue;
      out.emplace_back(*A, b, *C, *D);
    }
  });
  return sorted_unique(std::move(out));
}

std::vector<MoebiusElt> anticommuting_elements(const MoebiusElt& beta, std::int64_t bound) {
  if (!beta.trace().is_zero()) return {};
  if (beta.b().is_zero()) {
    if (beta.c().is_zero()) throw std::domain_error("diagonal element: centraliser search needs a non-zero off-diagonal entry");
    std::vector<MoebiusElt> out;
    for (const auto& x : anticommuting_elements(transpose(beta), bound)) out.push_back(transpose(x));
    return sorted_unique(std::move(out));
  }
  const RingBasis& r = beta.basis();
  const QuadElem e = to_field(beta.a()), f = to_field(beta.b()), g = to_field(beta.c());
  const QuadElem one(r, Rational(1), Rational(0));
  std::vector<MoebiusElt> out;
  // X = [[x, y], [z, -x]] with 2ex + gy + fz = 0 and -x^2 - yz = 1
  scan_box(r, bound, [&](const RingElem& y) {
    QuadElem yf = to_field(y) / f;
    auto s = field_sqrt(QuadElem(r, Rational(0), Rational(0)) - yf * yf - one);
    if (!s) return;
    for (const QuadElem& root : {*s, QuadElem(r, -s->a, -s->b)}) {
      QuadElem x = e * yf + root;
      QuadElem z = QuadElem(r, Rational(0), Rational(0)) - (e * x.scaled(2) + g * to_field(y)) / f;
      auto X = to_ring(x), Z = to_ring(z);
      if (!X || !Z) continue;
      RingElem mx(r, -X->a, -X->b);
      if (!(*X * mx - y * *Z == RingElem(r, 1, 0))) continue;
      out.emplace_back(*X, y, *Z, mx);
    }
  });
  return sorted_unique(std::move(out));
}

namespace {

struct AxisVertex {
  UhsPoint actual;
  int v;
  MoebiusElt g;  // g . points[v] = actual
};

class AxisWalker {
 public:
  AxisWalker(const EquivComplex& ec, const MoebiusElt& beta) : ec_(ec), beta_(beta) { start(); }

  // index of the axis vertex at the given point, extending the walk as needed
  std::optional<long> index_of(const UhsPoint& p, int max_steps) {
    for (;;) {
      for (long i = 0; i < static_cast<long>(verts_.size()); ++i)
        if (verts_[i].actual == p) return i - offset_;
      if (static_cast<int>(verts_.size()) > 2 * max_steps) return std::nullopt;
      extend_forward();
      extend_backward();
    }
  }

  const AxisVertex& at(long k) {
    while (k + offset_ >= static_cast<long>(verts_.size())) extend_forward();
    while (k + offset_ < 0) extend_backward();
    return verts_[k + offset_];
  }

  // Gamma-orbit of the edge from vertex k to vertex k + 1
  int edge_orbit(long k) {
    at(k);
    at(k + 1);
    return edge_orbits_[k + offset_];
  }

 private:
  void start() {
    const RingBasis& r = ec_.basis;
    Geodesic axis = fixed_axis(beta_);
    UhsPoint p = axis.at(Rational(0));
    MoebiusElt g = MoebiusElt::identity(r);
    HemisphereFinder& finder = ec_.transporter->finder();
    for (;;) {
      auto [np, s] = normalize(p);
      p = np;
      g = MoebiusElt::translation(r, -s) * g;
      auto cov = finder.covering(p);
      if (cov.empty()) break;
      p = apply(cov.front().pairing, p);
      g = cov.front().pairing * g;
    }
    // now g beta g^-1 fixes p, a point of the floor
    MoebiusElt gi = g.inverse();
    MoebiusElt b = g * beta_ * gi;
    int v = ec_.find_point(p);
    if (v >= 0) {
      verts_.push_back(AxisVertex{apply(gi, p), v, gi});
    } else {
      for (const auto& e : ec_.edges) {
        if (e.stabiliser.elements.size() == 1) continue;
        for (std::int64_t sa = -2; sa <= 2 && verts_.empty(); ++sa)
          for (std::int64_t sb = -2; sb <= 2 && verts_.empty(); ++sb) {
            Shift sh{sa, sb};
            UhsPoint A = ec_.point(e.verts[0].shifted(sh)), B = ec_.point(e.verts[1].shifted(sh));
            if (fixes(b, A) && fixes(b, B))
              verts_.push_back(AxisVertex{apply(gi, A), e.verts[0].v,
                                          gi * MoebiusElt::translation(r, e.verts[0].s + sh)});
          }
        if (!verts_.empty()) break;
      }
      if (verts_.empty()) throw std::logic_error("rotation axis meets no edge of the refined complex");
    }
    auto [nxt, orbit] = step(verts_.front(), nullptr);
    verts_.push_back(nxt);
    edge_orbits_.push_back(orbit);
  }

  void extend_forward() {
    auto [nxt, orbit] = step(verts_.back(), &verts_[verts_.size() - 2].actual);
    verts_.push_back(nxt);
    edge_orbits_.push_back(orbit);
  }

  void extend_backward() {
    auto [prv, orbit] = step(verts_.front(), &verts_[1].actual);
    verts_.push_front(prv);
    edge_orbits_.push_front(orbit);
    ++offset_;
  }

  // next axis vertex after cur, away from prev
  std::pair<AxisVertex, int> step(const AxisVertex& cur, const UhsPoint* prev) {
    const RingBasis& r = ec_.basis;
    const UhsPoint& P = ec_.points[cur.v];
    MoebiusElt b = cur.g.inverse() * beta_ * cur.g;
    const auto& stab = ec_.vertices[cur.v].stabiliser.elements;
    const int vo = ec_.vertices[cur.v].orbit;
    for (int w : ec_.orbit_members[0][vo]) {
      MoebiusElt t = w == cur.v ? MoebiusElt::identity(r) : ec_.transporter->between(ec_.points[w], P).front();
      for (const auto& inc : ec_.incidences[w]) {
        const EquivCell& e = ec_.edges[inc.edge];
        if (e.stabiliser.elements.size() == 1) continue;
        const VRef far = e.verts[1 - inc.end].shifted(inc.shift);
        const UhsPoint F0 = ec_.point(far);
        for (const auto& s : stab) {
          MoebiusElt u = s * t;
          UhsPoint F = apply(u, F0);
          if (!fixes(b, F)) continue;
          UhsPoint actual = apply(cur.g, F);
          if (prev && actual == *prev) continue;
          return {AxisVertex{actual, far.v, cur.g * u * MoebiusElt::translation(r, far.s)}, e.orbit};
        }
      }
    }
    throw std::logic_error("rotation axis ends at a vertex of the refined complex");
  }

  const EquivComplex& ec_;
  MoebiusElt beta_;
  std::deque<AxisVertex> verts_;
  std::deque<int> edge_orbits_;  // edge_orbits_[i] joins verts_[i] and verts_[i + 1]
  long offset_ = 0;              // verts_[offset_] is vertex 0
};

}  // namespace

AxisQuotient generated_quotient(const EquivComplex& ec, const MoebiusElt& beta, const std::vector<MoebiusElt>& S,
                                int max_steps) {
  int ord = element_order(beta);
  if (ord != 2 && ord != 3) throw std::domain_error("beta must be a rotation of order 2 or 3");
  AxisQuotient q;
  q.generators = static_cast<int>(S.size());
  AxisWalker walk(ec, beta);
  const UhsPoint P0 = walk.at(0).actual, P1 = walk.at(1).actual;
  std::int64_t T = 0;
  std::optional<std::int64_t> centre;
  for (const auto& x : S) {
    if (!(x * beta == beta * x)) throw std::domain_error("element does not centralise beta: " + to_string(x));
    auto k = walk.index_of(apply(x, P0), max_steps);
    if (!k) {
      q.message = "an element of S moves the axis beyond " + std::to_string(max_steps) + " steps; raise the step limit";
      return q;
    }
    UhsPoint X1 = apply(x, P1);
    if (X1 == walk.at(*k + 1).actual) {
      T = std::gcd(T, std::abs(*k));
    } else if (X1 == walk.at(*k - 1).actual) {
      q.reflections = true;
      if (!centre) centre = *k;
      else T = std::gcd(T, std::abs(*k - *centre));
    } else {
      throw std::logic_error("centralising element does not preserve the axis");
    }
  }
  q.translation = T;
  if (T == 0) {
    q.message = "no translation along the axis among the elements found; raise the search bound";
    return q;
  }
  long first = 0, count = T;
  q.type = ComponentType::Circle;
  if (q.reflections) {
    if (T % 2 != 0 || *centre % 2 != 0) throw std::logic_error("reflection centre in the interior of an edge");
    q.type = ComponentType::Edge;
    first = *centre / 2;
    count = T / 2;
  }
  q.edge_count = static_cast<int>(count);
  for (long i = first; i < first + count; ++i) q.edge_orbits.push_back(walk.edge_orbit(i));
  std::set<int> distinct(q.edge_orbits.begin(), q.edge_orbits.end());
  if (distinct.size() != q.edge_orbits.size()) {
    q.message = "fundamental edges repeat a Gamma-orbit; <S> may be smaller than the centraliser, raise the bound";
    return q;
  }
  q.status = QuotientStatus::Certified;
  q.message = "one representative per Gamma-orbit of edges; <S> < C(beta) < Gamma";
  return q;
}

AxisQuotient centraliser_quotient(const EquivComplex& ec, const MoebiusElt& beta, std::int64_t bound) {
  std::vector<MoebiusElt> S = commuting_elements(beta, bound);
  auto anti = anticommuting_elements(beta, bound);
  S.insert(S.end(), anti.begin(), anti.end());
  return generated_quotient(ec, beta, S);
}

}  // namespace bianchi

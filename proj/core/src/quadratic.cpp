#include "bianchi/quadratic.hpp"

#include <array>
#include <sstream>
#include <vector>

namespace bianchi {

bool is_squarefree(long m) {
  if (m <= 0) return false;
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

RingBasis RingBasis::for_m(long m) {
  if (m <= 0) throw std::invalid_argument("m must be a positive integer, got " + std::to_string(m));
  if (!is_squarefree(m)) throw std::invalid_argument("m = " + std::to_string(m) + " is not square-free");
  if (m == 1 || m == 3)
    throw std::invalid_argument("m = " + std::to_string(m) + " has units other than +-1");
  RingBasis r;
  r.m = m;
  r.kind = (m % 4 == 3) ? OmegaCase::HalfTrace : OmegaCase::Plain;
  return r;
}

QuadElem to_field(const RingElem& x) { return QuadElem(x.basis, Rational(x.a), Rational(x.b)); }

bool is_integral(const QuadElem& x) { return is_integer(x.a) && is_integer(x.b); }

std::optional<RingElem> to_ring(const QuadElem& x) {
  if (!is_integral(x)) return std::nullopt;
  return RingElem(x.basis, x.a.get_num(), x.b.get_num());
}

QuadElem inverse(const QuadElem& x) {
  Rational n = x.norm();
  if (n == 0) throw std::domain_error("division by zero in quadratic field");
  QuadElem c = x.conj();
  Rational inv = 1 / n;
  return c.scaled(inv);
}

QuadElem operator/(const QuadElem& x, const QuadElem& y) { return x * inverse(y); }

RingElem sqrt_neg_m(const RingBasis& r) {
  if (r.kind == OmegaCase::Plain) return RingElem(r, 0, 1);
  return RingElem(r, 1, 2);
}

Rational bilinear(const QuadElem& x, const QuadElem& y) {
  x.check(y);
  Rational t2 = make_rational(x.basis.t(), 2);
  return x.a * y.a + x.basis.n() * x.b * y.b - t2 * (x.a * y.b + x.b * y.a);
}

bool divides(const RingElem& x, const RingElem& y) {
  if (x.is_zero()) throw std::domain_error("divisibility by zero");
  return is_integral(to_field(y) / to_field(x));
}

namespace {

template <class C>
std::string render(const RingBasis& r, const C& a, const C& b, bool rational) {
  auto fmt = [&](const C& c) {
    if constexpr (std::is_same_v<C, Rational>) {
      if (rational && !is_integer(c)) return c.get_str();
      return c.get_num().get_str();
    } else {
      return c.get_str();
    }
  };
  std::ostringstream os;
  if (b == 0) {
    os << fmt(a);
  } else {
    if (a != 0) os << fmt(a) << (b > 0 ? "+" : "-");
    else if (b < 0) os << "-";
    C ab = b < 0 ? C(-b) : b;
    if (ab != 1) os << fmt(ab) << "*";
    os << "w";
  }
  (void)r;
  return os.str();
}

}  // namespace

std::string to_string(const QuadElem& x) { return render(x.basis, x.a, x.b, true); }
std::string to_string(const RingElem& x) { return render(x.basis, x.a, x.b, false); }
std::ostream& operator<<(std::ostream& os, const QuadElem& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const RingElem& x) { return os << to_string(x); }

namespace {

// An element of the lattice O = Z^2 together with its coordinates over the
// generators lambda, lambda*w, mu, mu*w.
struct Tracked {
  std::array<Integer, 2> v;
  std::array<Integer, 4> coef;
};

void axpy(Tracked& dst, const Integer& q, const Tracked& src) {
  for (int i = 0; i < 2; ++i) dst.v[i] -= q * src.v[i];
  for (int i = 0; i < 4; ++i) dst.coef[i] -= q * src.coef[i];
}

// Euclid on coordinate k across rows; returns index of the surviving row or -1.
int euclid_column(std::vector<Tracked>& rows, int k) {
  for (;;) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i].v[k] == 0) continue;
      if (best < 0 || abs(rows[i].v[k]) < abs(rows[best].v[k])) best = i;
    }
    if (best < 0) return -1;
    bool done = true;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == best || rows[i].v[k] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i].v[k].get_mpz_t(), rows[best].v[k].get_mpz_t());
      axpy(rows[i], q, rows[best]);
      if (rows[i].v[k] != 0) done = false;
    }
    if (done) return best;
  }
}

}  // namespace

std::optional<std::pair<RingElem, RingElem>> bezout(const RingElem& lambda, const RingElem& mu) {
  lambda.check(mu);
  const RingBasis& r = lambda.basis;
  RingElem w = RingElem::omega(r);
  std::array<RingElem, 4> gens = {lambda, lambda * w, mu, mu * w};
  std::vector<Tracked> rows;
  for (int i = 0; i < 4; ++i) {
    Tracked t;
    t.v = {gens[i].a, gens[i].b};
    t.coef = {0, 0, 0, 0};
    t.coef[i] = 1;
    rows.push_back(t);
  }
  int pb = euclid_column(rows, 1);
  if (pb < 0) return std::nullopt;
  if (abs(rows[pb].v[1]) != 1) return std::nullopt;
  std::vector<Tracked> rest;
  for (int i = 0; i < 4; ++i)
    if (i != pb) rest.push_back(rows[i]);
  int pa = euclid_column(rest, 0);
  if (pa < 0 || abs(rest[pa].v[0]) != 1) return std::nullopt;
  Tracked one = rest[pa];
  if (one.v[0] < 0) {
    for (auto& c : one.coef) c = -c;
  }
  RingElem x(r, one.coef[0], one.coef[1]);
  RingElem y(r, one.coef[2], one.coef[3]);
  if (!(x * lambda + y * mu == RingElem(r, 1, 0))) throw std::logic_error("bezout bookkeeping failed");
  return std::make_pair(x, y);
}

RingElem shift_elem(const RingBasis& r, const Shift& s) { return RingElem(r, Integer(static_cast<long>(s.a)), Integer(static_cast<long>(s.b))); }

QuadElem operator+(const QuadElem& z, const Shift& s) {
  return QuadElem(z.basis, z.a + Rational(static_cast<long>(s.a)), z.b + Rational(static_cast<long>(s.b)));
}

UhsPoint make_point(const QuadElem& z, const Rational& rsq) {
  if (rsq < 0) throw std::domain_error("negative squared height");
  return UhsPoint{z, rsq};
}

std::strong_ordering cmp_heights(const UhsPoint& p, const UhsPoint& q) { return compare(p.rsq, q.rsq); }

std::pair<UhsPoint, Shift> normalize(const UhsPoint& p) {
  Integer fa = floor_of(p.z.a), fb = floor_of(p.z.b);
  Shift s{to_int64(fa), to_int64(fb)};
  UhsPoint q{p.z + (-s), p.rsq};
  return {q, s};
}

std::string to_string(const UhsPoint& p) {
  return "(" + to_string(p.z) + ", r^2=" + p.rsq.get_str() + ")";
}

}  // namespace bianchi

#pragma once

#include "bianchi/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bianchi {

// omega = sqrt(-m) for m = 1,2 mod 4, omega = (-1 + sqrt(-m))/2 for m = 3 mod 4.
// In both cases omega^2 = -t*omega - n.
enum class OmegaCase { Plain, HalfTrace };

struct RingBasis {
  long m = 0;
  OmegaCase kind = OmegaCase::Plain;

  // Rejects non-square-free m and the two fields with extra units (m = 1, 3).
  static RingBasis for_m(long m);

  long t() const { return kind == OmegaCase::Plain ? 0 : 1; }
  long n() const { return kind == OmegaCase::Plain ? m : (1 + m) / 4; }
  const char* case_name() const { return kind == OmegaCase::Plain ? "plain" : "half-trace"; }

  bool operator==(const RingBasis&) const = default;
};

bool is_squarefree(long m);

struct BasisMismatch : std::invalid_argument {
  BasisMismatch() : std::invalid_argument("quadratic numbers over different rings") {}
};

// a + b*omega with coefficients in C (Integer for ring elements, Rational for field elements).
template <class C>
struct QuadNumber {
  RingBasis basis;
  C a = 0;
  C b = 0;

  QuadNumber() = default;
  QuadNumber(const RingBasis& r, C a0, C b0 = 0) : basis(r), a(std::move(a0)), b(std::move(b0)) {}

  static QuadNumber omega(const RingBasis& r) { return QuadNumber(r, 0, 1); }

  bool is_zero() const { return a == 0 && b == 0; }

  C norm() const { return a * a - basis.t() * a * b + basis.n() * b * b; }
  C trace() const { return 2 * a - basis.t() * b; }
  QuadNumber conj() const { return QuadNumber(basis, a - basis.t() * b, -b); }

  QuadNumber operator-() const { return QuadNumber(basis, -a, -b); }
  QuadNumber operator+(const QuadNumber& o) const {
    check(o);
    return QuadNumber(basis, a + o.a, b + o.b);
  }
  QuadNumber operator-(const QuadNumber& o) const {
    check(o);
    return QuadNumber(basis, a - o.a, b - o.b);
  }
  QuadNumber operator*(const QuadNumber& o) const {
    check(o);
    C bd = b * o.b;
    return QuadNumber(basis, a * o.a - basis.n() * bd, a * o.b + b * o.a - basis.t() * bd);
  }
  QuadNumber scaled(const C& s) const { return QuadNumber(basis, a * s, b * s); }
  QuadNumber& operator+=(const QuadNumber& o) { return *this = *this + o; }
  QuadNumber& operator-=(const QuadNumber& o) { return *this = *this - o; }
  QuadNumber& operator*=(const QuadNumber& o) { return *this = *this * o; }

  bool operator==(const QuadNumber& o) const { return basis == o.basis && a == o.a && b == o.b; }
  std::strong_ordering operator<=>(const QuadNumber& o) const {
    if (auto c = compare(a, o.a); c != 0) return c;
    return compare(b, o.b);
  }

  void check(const QuadNumber& o) const {
    if (!(basis == o.basis)) throw BasisMismatch();
  }
};

using QuadElem = QuadNumber<Rational>;
using RingElem = QuadNumber<Integer>;

QuadElem to_field(const RingElem& x);
std::optional<RingElem> to_ring(const QuadElem& x);
bool is_integral(const QuadElem& x);

QuadElem inverse(const QuadElem& x);
QuadElem operator/(const QuadElem& x, const QuadElem& y);

// sqrt(-m) as a ring element: omega or 2*omega + 1
RingElem sqrt_neg_m(const RingBasis& r);

// Re(x * conj(y)), the bilinear form attached to the norm.
Rational bilinear(const QuadElem& x, const QuadElem& y);

// ring element x divides y (x != 0)
bool divides(const RingElem& x, const RingElem& y);

std::string to_string(const QuadElem& x);
std::string to_string(const RingElem& x);
std::ostream& operator<<(std::ostream& os, const QuadElem& x);
std::ostream& operator<<(std::ostream& os, const RingElem& x);

// Bezout in O: returns (x, y) with x*lambda + y*mu = 1, or nothing when (lambda, mu) != O.
std::optional<std::pair<RingElem, RingElem>> bezout(const RingElem& lambda, const RingElem& mu);

// Translation offset in omega coordinates.
struct Shift {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Shift operator+(const Shift& o) const { return {a + o.a, b + o.b}; }
  Shift operator-(const Shift& o) const { return {a - o.a, b - o.b}; }
  Shift operator-() const { return {-a, -b}; }
  bool operator==(const Shift&) const = default;
  auto operator<=>(const Shift&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
};

RingElem shift_elem(const RingBasis& r, const Shift& s);
QuadElem operator+(const QuadElem& z, const Shift& s);

// Point z + r*j of upper half-space, stored with r^2; r^2 = 0 marks a cusp.
struct UhsPoint {
  QuadElem z;
  Rational rsq;

  bool is_cusp() const { return rsq == 0; }
  bool operator==(const UhsPoint& o) const { return z == o.z && rsq == o.rsq; }
  std::strong_ordering operator<=>(const UhsPoint& o) const {
    if (auto c = z <=> o.z; c != 0) return c;
    return compare(rsq, o.rsq);
  }
  UhsPoint shifted(const Shift& s) const { return {z + s, rsq}; }
};

UhsPoint make_point(const QuadElem& z, const Rational& rsq);
std::strong_ordering cmp_heights(const UhsPoint& p, const UhsPoint& q);

// Translate z into the fundamental rectangle [0,1) x [0,1) of omega coordinates.
// Returns the normalized point and the shift s with point = normalized + s.
std::pair<UhsPoint, Shift> normalize(const UhsPoint& p);

std::string to_string(const UhsPoint& p);

}  // namespace bianchi

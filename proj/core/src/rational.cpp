#include "bianchi/rational.hpp"

#include <stdexcept>

namespace bianchi {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool integer_sqrt(const Integer& z, Integer& root) {
  if (z < 0) return false;
  if (!mpz_perfect_square_p(z.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
  return true;
}

bool rational_sqrt(const Rational& q, Rational& root) {
  Integer n, d;
  if (!integer_sqrt(q.get_num(), n) || !integer_sqrt(q.get_den(), d)) return false;
  root = make_rational(n, d);
  return true;
}

std::strong_ordering compare(const Rational& x, const Rational& y) {
  int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering compare(const Integer& x, const Integer& y) {
  int c = cmp(x, y);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  return z.get_si();
}

}  // namespace bianchi

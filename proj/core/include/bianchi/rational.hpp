#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace bianchi {

// mpq_class keeps num/den coprime with den > 0 after canonicalize();
// every value produced by this library is canonical.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Always "num/den", also for integers ("3/1").
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& q);
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
// exact square root when q is the square of a rational
bool rational_sqrt(const Rational& q, Rational& root);
bool integer_sqrt(const Integer& z, Integer& root);

std::strong_ordering compare(const Rational& x, const Rational& y);
std::strong_ordering compare(const Integer& x, const Integer& y);

std::int64_t to_int64(const Integer& z);

}  // namespace bianchi

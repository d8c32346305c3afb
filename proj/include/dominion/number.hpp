#pragma once

// Exact rationals, parsing/rendering, and the scalar traits that let the
// solvers run over mpq_class or a binary float.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dominion {

using Rational = mpq_class;
using BigInt = mpz_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q", a plain integer, or a finite decimal ("0.125", "-3.5").
/// The result is always canonical (lowest terms, positive denominator).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Fixed-point rendering with `digits` fractional digits, round-half-even.
std::string to_decimal(const Rational& value, int digits = 12);

/// The exact value of a finite binary float.
Rational exact_rational(long double v);

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Conversion and zero tests shared by the scalar-generic solvers.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from(const Rational& q) { return q; }
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static bool is_one(const Rational& q) { return q == 1; }
  static double to_double(const Rational& q) { return q.get_d(); }
  static constexpr const char* name = "rational";
};

template <>
struct ScalarTraits<double> {
  static double from(const Rational& q) { return q.get_d(); }
  static bool is_zero(double v) { return v == 0.0; }
  static bool is_one(double v) { return v == 1.0; }
  static double to_double(double v) { return v; }
  static constexpr const char* name = "double";
};

template <>
struct ScalarTraits<long double> {
  static long double from(const Rational& q) {
    // mpq get_d loses the exponent range long double has
    const auto& num = q.get_num();
    const auto& den = q.get_den();
    long en = 0, ed = 0;
    const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
    if (mn == 0.0) return 0.0L;
    return std::ldexp(static_cast<long double>(mn) / static_cast<long double>(md), static_cast<int>(en - ed));
  }
  static bool is_zero(long double v) { return v == 0.0L; }
  static bool is_one(long double v) { return v == 1.0L; }
  static double to_double(long double v) { return static_cast<double>(v); }
  static constexpr const char* name = "float";
};

/// The binary floating-point backend; long double for its exponent range,
/// since products of many (1 - π) factors leave double's.
using Float = long double;

template <class T>
T scalar_from(const Rational& q) {
  return ScalarTraits<T>::from(q);
}

}  // namespace dominion

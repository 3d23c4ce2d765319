#pragma once

// Numeric-field contract shared by the exact-rational and binary64 backends.
//
// Every algorithm in the library is a template over a Scalar type satisfying
// the `Field` concept below.  Two realizations are provided:
//
//   Rational  (GMP mpq_class)  all field operations exact, equality decidable
//   double                     IEEE-754 rounding of the exact result
//
// Backend-specific behaviour (tolerance defaults, absolute value, conversion,
// formatting) lives in `ScalarTraits<T>`.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace twolocus {

using Rational = mpq_class;

template <typename T>
concept Field = requires(T a, T b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
};

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "floating";

  static double ratio(std::int64_t num, std::int64_t den = 1) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_double(double v) { return v; }
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static double pow(double base, unsigned n) {
    return std::pow(base, static_cast<double>(n));
  }

  static double default_membership() { return 1e-12; }
  static double default_convergence() { return 1e-10; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";

  static Rational ratio(std::int64_t num, std::int64_t den = 1) {
    Rational r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
  }
  // Exact binary value of the double (no decimal rounding).
  static Rational from_double(double v) { return Rational(v); }
  static Rational abs(const Rational& v) { return ::abs(v); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static Rational pow(Rational base, unsigned n) {
    Rational acc(1);
    while (n != 0) {
      if (n & 1u) acc *= base;
      base *= base;
      n >>= 1u;
    }
    return acc;
  }

  static Rational default_membership() { return Rational(0); }
  static Rational default_convergence() { return Rational(1, 10000000000L); }
};

template <typename T>
concept Scalar = Field<T> && requires { ScalarTraits<T>::exact; };

/// Slack used for simplex / fixed-point membership and for stopping orbits.
/// In rational mode membership is exact (zero slack).
template <Scalar T>
struct Tolerance {
  T eps_membership = ScalarTraits<T>::default_membership();
  T eps_convergence = ScalarTraits<T>::default_convergence();

  static Tolerance with_membership(T eps) {
    Tolerance t;
    t.eps_membership = std::move(eps);
    return t;
  }
};

template <Scalar T>
T abs_value(const T& v) {
  return ScalarTraits<T>::abs(v);
}

template <Scalar T>
double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <Scalar T>
T ratio(std::int64_t num, std::int64_t den = 1) {
  return ScalarTraits<T>::ratio(num, den);
}

template <Scalar T>
T max_of(const T& lhs, const T& rhs) {
  return lhs < rhs ? rhs : lhs;
}

/// |lhs - rhs| <= eps.  With a rational backend and eps = 0 this is equality.
template <Scalar T>
bool approx_eq(const T& lhs, const T& rhs, const T& eps) {
  T diff = lhs - rhs;
  return !(eps < abs_value(diff));
}

// Text conversion.  Accepted inputs: integers, decimals ("0.25", "-1.5e-3"
// for floating mode), and fractions "p/q".  Rational parsing of a decimal is
// exact ("0.1" -> 1/10).
template <Scalar T>
T parse_scalar(std::string_view text);

template <>
double parse_scalar<double>(std::string_view text);

template <>
Rational parse_scalar<Rational>(std::string_view text);

/// Shortest round-trip decimal for doubles, "p/q" for rationals.
std::string format_scalar(double v);
std::string format_scalar(const Rational& v);

}  // namespace twolocus

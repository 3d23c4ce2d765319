#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "twolocus/error.hpp"
#include "twolocus/scalar.hpp"

using namespace twolocus;

TEST_CASE("approx_eq on both backends") {
  CHECK(approx_eq(Rational(Rational(1, 3) + Rational(1, 6)), Rational(1, 2), Rational(0)));
  CHECK_FALSE(approx_eq(Rational(1, 3), Rational(333, 1000), Rational(0)));
  CHECK(approx_eq(0.1 + 0.2, 0.3, 1e-12));
  CHECK_FALSE(approx_eq(0.1 + 0.2, 0.3, 0.0));
  CHECK_FALSE(approx_eq(0.5, 0.25, 1e-12));
}

TEST_CASE("default tolerances") {
  Tolerance<double> f;
  CHECK(f.eps_membership == 1e-12);
  CHECK(f.eps_convergence == 1e-10);
  CHECK(f.eps_membership > 0.0);
  Tolerance<Rational> r;
  CHECK(r.eps_membership == 0);
  CHECK(r.eps_convergence == Rational(1, 10000000000L));
  CHECK(Tolerance<double>::with_membership(1e-6).eps_membership == 1e-6);
}

TEST_CASE("parse_scalar") {
  CHECK(parse_scalar<Rational>("0.1") == Rational(1, 10));
  CHECK(parse_scalar<Rational>("1/4") == Rational(1, 4));
  CHECK(parse_scalar<Rational>(" 2/4 ") == Rational(1, 2));
  CHECK(parse_scalar<Rational>("-0.5") == Rational(-1, 2));
  CHECK(parse_scalar<Rational>("1e-10") == Rational(1, 10000000000L));
  CHECK(parse_scalar<Rational>("2.5E1") == Rational(25));
  CHECK(parse_scalar<Rational>("0.25/0.5") == Rational(1, 2));
  CHECK(parse_scalar<double>("0.25") == 0.25);
  CHECK(parse_scalar<double>("1/4") == 0.25);
  CHECK(parse_scalar<double>("1e-10") == 1e-10);
  CHECK(parse_scalar<double>("+3") == 3.0);

  for (const char* bad : {"", "abc", "0.1.2", "1/0", "1/", "--1", "1e"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_scalar<double>(bad), Error);
    CHECK_THROWS_AS(parse_scalar<Rational>(bad), Error);
  }
}

TEST_CASE("format_scalar") {
  CHECK(format_scalar(0.35) == "0.35");
  CHECK(format_scalar(0.1 + 0.2) == "0.30000000000000004");
  CHECK(format_scalar(1e-10) == "1e-10");
  CHECK(format_scalar(Rational(7, 20)) == "7/20");
  CHECK(format_scalar(Rational(1)) == "1/1");
  CHECK(format_scalar(Rational(0)) == "0/1");
  CHECK(format_scalar(Rational(-3, 4)) == "-3/4");
}

TEST_CASE("shortest decimals round-trip") {
  testing::Gen gen(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = gen.uniform(-1.0, 1.0) * std::pow(10.0, gen.integer(-20, 5));
    CHECK(parse_scalar<double>(format_scalar(v)) == v);
  }
}

TEST_CASE("rational addition matches cross-multiplication") {
  testing::Gen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const long p = gen.integer(-50, 50), q = gen.integer(1, 50);
    const long r = gen.integer(-50, 50), s = gen.integer(1, 50);
    const Rational sum = ratio<Rational>(p, q) + ratio<Rational>(r, s);
    Rational expected(p * s + r * q, q * s);
    expected.canonicalize();
    CHECK(sum == expected);
    CHECK(sum.get_num() * expected.get_den() == expected.get_num() * sum.get_den());
  }
}

TEST_CASE("floating backend tracks the rational backend") {
  // Left-deep expressions of +, *, / over operands in (0,1]: no cancellation,
  // so the relative error is bounded by the operation count.
  testing::Gen gen(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const double first = gen.uniform(0.001, 1.0);
    double f = first;
    Rational r = ScalarTraits<Rational>::from_double(first);
    const long depth = gen.integer(1, 10);
    for (long d = 0; d < depth; ++d) {
      const double operand = gen.uniform(0.001, 1.0);
      const Rational exact_operand = ScalarTraits<Rational>::from_double(operand);
      switch (gen.integer(0, 2)) {
        case 0: f = f + operand; r = r + exact_operand; break;
        case 1: f = f * operand; r = r * exact_operand; break;
        default: f = f / operand; r = r / exact_operand; break;
      }
    }
    const double exact = r.get_d();
    CHECK(std::fabs(f - exact) <= 1e-14 * std::fabs(exact));
  }
}

TEST_CASE("rational pow by squaring") {
  CHECK(ScalarTraits<Rational>::pow(Rational(1, 2), 10) == Rational(1, 1024));
  CHECK(ScalarTraits<Rational>::pow(Rational(0), 0) == 1);
  CHECK(ScalarTraits<Rational>::pow(Rational(-2, 3), 3) == Rational(-8, 27));
}

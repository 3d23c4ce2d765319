#pragma once

// State space S^3 of gamete frequencies, the recombination parameters, and
// the scalar observables used throughout: allele frequency alpha = x + y,
// linkage disequilibrium D = yu - xv, and fixed-point membership.

#include <array>
#include <string>
#include <string_view>

#include "twolocus/error.hpp"
#include "twolocus/scalar.hpp"

namespace twolocus {

/// Frequencies of the gametes A1B1, A1B2, A2B1, A2B2.
template <Scalar T>
struct GameteState {
  T x{}, y{}, u{}, v{};

  std::array<T, 4> coords() const { return {x, y, u, v}; }
  bool operator==(const GameteState&) const = default;
};

template <Scalar T>
struct RecombinationParams {
  T a{}, b{};

  bool is_identity() const { return a == 0 && b == 0; }
  bool operator==(const RecombinationParams&) const = default;
};

/// Checked constructor for (a, b) in [0,1]^2.
template <Scalar T>
RecombinationParams<T> make_params(T a, T b) {
  auto bad = [](const T& p) { return p < T(0) || T(1) < p; };
  if (bad(a) || bad(b)) {
    throw Error(ErrorKind::InvalidParams,
                "recombination parameters must lie in [0,1], got a=" + format_scalar(a) +
                    ", b=" + format_scalar(b));
  }
  return {std::move(a), std::move(b)};
}

namespace detail {

template <Scalar T>
T clamp_unit(const T& c) {
  if (c < T(0)) return T(0);
  if (T(1) < c) return T(1);
  return c;
}

}  // namespace detail

/// Accepts (x, y, u, v) as a point of S^3.  Coordinates within
/// eps_membership of [0,1] are clamped; larger violations throw
/// NegativeCoordinate (checked first) or NotOnSimplex.
template <Scalar T>
GameteState<T> validate(const T& x, const T& y, const T& u, const T& v,
                        const Tolerance<T>& tol = {}) {
  const std::array<const T*, 4> raw{&x, &y, &u, &v};
  static constexpr std::array<const char*, 4> names{"x", "y", "u", "v"};
  for (std::size_t i = 0; i < 4; ++i) {
    T neg = -tol.eps_membership;
    if (*raw[i] < neg) {
      throw Error(ErrorKind::NegativeCoordinate,
                  std::string("coordinate ") + names[i] + " = " + format_scalar(*raw[i]) +
                      " is negative");
    }
  }
  T sum = x + y + u + v;
  if (!approx_eq(sum, T(1), tol.eps_membership)) {
    throw Error(ErrorKind::NotOnSimplex,
                "coordinates sum to " + format_scalar(sum) + ", expected 1");
  }
  return {detail::clamp_unit(x), detail::clamp_unit(y), detail::clamp_unit(u),
          detail::clamp_unit(v)};
}

template <Scalar T>
GameteState<T> validate(const std::array<T, 4>& raw, const Tolerance<T>& tol = {}) {
  return validate(raw[0], raw[1], raw[2], raw[3], tol);
}

/// Non-throwing membership test with the same rules as `validate`.
template <Scalar T>
bool on_simplex(const GameteState<T>& s, const T& eps) {
  T neg = -eps;
  for (const T& c : s.coords()) {
    if (c < neg) return false;
  }
  T sum = s.x + s.y + s.u + s.v;
  return approx_eq(sum, T(1), eps);
}

/// D = yu - xv.  |D| <= 1/4 on S^3.
template <Scalar T>
T linkage_disequilibrium(const GameteState<T>& s) {
  return T(s.y * s.u - s.x * s.v);
}

/// Index of the invariant slice containing s: alpha = x + y.
template <Scalar T>
T alpha_of(const GameteState<T>& s) {
  return T(s.x + s.y);
}

template <Scalar T>
bool is_fixed_point(const GameteState<T>& s, const RecombinationParams<T>& p,
                    const Tolerance<T>& tol = {}) {
  // a = b = 0 is the identity map.
  if (p.is_identity()) return true;
  return approx_eq(linkage_disequilibrium(s), T(0), tol.eps_membership);
}

/// Max-norm distance between two states.
template <Scalar T>
T max_norm_distance(const GameteState<T>& lhs, const GameteState<T>& rhs) {
  T best = abs_value(T(lhs.x - rhs.x));
  best = max_of(best, abs_value(T(lhs.y - rhs.y)));
  best = max_of(best, abs_value(T(lhs.u - rhs.u)));
  best = max_of(best, abs_value(T(lhs.v - rhs.v)));
  return best;
}

template <Scalar T>
GameteState<double> to_double(const GameteState<T>& s) {
  return {to_double(s.x), to_double(s.y), to_double(s.u), to_double(s.v)};
}

/// Parses "x,y,u,v" (decimals or p/q fractions) and validates it.
template <Scalar T>
GameteState<T> parse_state(std::string_view text, const Tolerance<T>& tol = {}) {
  std::array<T, 4> raw;
  std::size_t count = 0;
  while (true) {
    auto comma = text.find(',');
    std::string_view field = text.substr(0, comma);
    if (count == 4) {
      throw Error(ErrorKind::UsageError, "a state has exactly four coordinates x,y,u,v");
    }
    raw[count++] = parse_scalar<T>(field);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (count != 4) {
    throw Error(ErrorKind::UsageError, "a state has exactly four coordinates x,y,u,v");
  }
  return validate(raw, tol);
}

template <Scalar T>
std::string format_state(const GameteState<T>& s) {
  return format_scalar(s.x) + "," + format_scalar(s.y) + "," + format_scalar(s.u) + "," +
         format_scalar(s.v);
}

}  // namespace twolocus

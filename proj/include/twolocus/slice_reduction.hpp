#pragma once

// Dynamics restricted to the invariant slices
//
//   X_alpha = { x + y = alpha, u + v = 1 - alpha },
//
// where W acts linearly on (x, u) through the transfer matrix
//
//   M_alpha = [[1 - a + a alpha,   a alpha      ],
//              [(1 - alpha) b,     1 - b alpha  ]]
//
// with eigenvalues 1 and lambda2 = 1 - (1 - alpha) a - alpha b.  Powers of
// M_alpha follow from the two-term Cayley-Hamilton identity
// M^n = c0 I + c1 M, which also yields the limit matrix and the closed-form
// limit of every orbit.

#include <cmath>

#include "twolocus/error.hpp"
#include "twolocus/gamete_state.hpp"
#include "twolocus/scalar.hpp"

namespace twolocus {

template <Scalar T>
struct SliceCoords {
  T alpha{}, x{}, u{};
  bool operator==(const SliceCoords&) const = default;
};

template <Scalar T>
struct Matrix2 {
  T m00{}, m01{}, m10{}, m11{};

  static Matrix2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T trace() const { return T(m00 + m11); }
  T det() const { return T(m00 * m11 - m01 * m10); }

  Matrix2 operator*(const Matrix2& o) const {
    return {T(m00 * o.m00 + m01 * o.m10), T(m00 * o.m01 + m01 * o.m11),
            T(m10 * o.m00 + m11 * o.m10), T(m10 * o.m01 + m11 * o.m11)};
  }
  bool operator==(const Matrix2&) const = default;
};

template <Scalar T>
using TransferMatrix = Matrix2<T>;

template <Scalar T>
struct EigenPair {
  T lambda1{}, lambda2{};
};

template <Scalar T>
T max_entry_distance(const Matrix2<T>& lhs, const Matrix2<T>& rhs) {
  T best = abs_value(T(lhs.m00 - rhs.m00));
  best = max_of(best, abs_value(T(lhs.m01 - rhs.m01)));
  best = max_of(best, abs_value(T(lhs.m10 - rhs.m10)));
  best = max_of(best, abs_value(T(lhs.m11 - rhs.m11)));
  return best;
}

template <Scalar T>
SliceCoords<T> project(const GameteState<T>& s) {
  return {alpha_of(s), s.x, s.u};
}

template <Scalar T>
GameteState<T> lift(const SliceCoords<T>& c, const Tolerance<T>& tol = {}) {
  const T one_minus_alpha = T(1) - c.alpha;
  T neg = -tol.eps_membership;
  T x_room = c.alpha - c.x;
  T u_room = one_minus_alpha - c.u;
  if (c.x < neg || c.u < neg || x_room < neg || u_room < neg) {
    throw Error(ErrorKind::OutOfSlice,
                "slice coordinates (alpha=" + format_scalar(c.alpha) + ", x=" +
                    format_scalar(c.x) + ", u=" + format_scalar(c.u) +
                    ") violate 0 <= x <= alpha, 0 <= u <= 1 - alpha");
  }
  return {c.x, x_room, c.u, T(one_minus_alpha - c.u)};
}

template <Scalar T>
TransferMatrix<T> transfer_matrix(const T& alpha, const RecombinationParams<T>& p) {
  const T one_minus_alpha = T(1) - alpha;
  return {T(T(1) - p.a + p.a * alpha), T(p.a * alpha), T(one_minus_alpha * p.b),
          T(T(1) - p.b * alpha)};
}

/// (1 - alpha) a + alpha b, the contraction gap 1 - lambda2.
template <Scalar T>
T contraction_gap(const T& alpha, const RecombinationParams<T>& p) {
  return T((T(1) - alpha) * p.a + alpha * p.b);
}

template <Scalar T>
EigenPair<T> eigenvalues(const T& alpha, const RecombinationParams<T>& p) {
  return {T(1), T(T(1) - contraction_gap(alpha, p))};
}

template <Scalar T>
SliceCoords<T> reduced_step(const SliceCoords<T>& c, const RecombinationParams<T>& p) {
  const TransferMatrix<T> m = transfer_matrix(c.alpha, p);
  return {c.alpha, T(m.m00 * c.x + m.m01 * c.u), T(m.m10 * c.x + m.m11 * c.u)};
}

/// M_alpha^n by n - 1 successive multiplications.  Reference path.
template <Scalar T>
TransferMatrix<T> matrix_power_by_multiplication(const T& alpha, const RecombinationParams<T>& p,
                                                 unsigned n) {
  const TransferMatrix<T> m = transfer_matrix(alpha, p);
  TransferMatrix<T> acc = TransferMatrix<T>::identity();
  for (unsigned k = 0; k < n; ++k) acc = acc * m;
  return acc;
}

namespace detail {

// c1(n) = (lambda2^n - 1) / (lambda2 - 1) = sum_{k<n} lambda2^k, given the
// gap g = 1 - lambda2.  Repeated eigenvalue (g = 0) gives c1 = n.
inline double power_weight(double gap, unsigned n) {
  if (n == 0) return 0.0;
  if (gap == 0.0) return static_cast<double>(n);
  if (gap >= 1.0) {
    // lambda2 <= 0: log1p is undefined at -1, evaluate directly.
    const double lambda2 = 1.0 - gap;
    return (std::pow(lambda2, static_cast<double>(n)) - 1.0) / (lambda2 - 1.0);
  }
  return std::expm1(static_cast<double>(n) * std::log1p(-gap)) / -gap;
}

inline Rational power_weight(const Rational& gap, unsigned n) {
  if (gap == 0) return Rational(n);
  const Rational lambda2 = 1 - gap;
  return Rational((1 - ScalarTraits<Rational>::pow(lambda2, n)) / gap);
}

}  // namespace detail

/// M_alpha^n = c0 I + c1 M_alpha with c1 = (lambda2^n - lambda1^n) /
/// (lambda2 - lambda1) and c0 = 1 - c1 (lambda1 = 1).  When lambda2 = lambda1
/// the identity degenerates to M^n = n M - (n - 1) I.
template <Scalar T>
TransferMatrix<T> matrix_power(const T& alpha, const RecombinationParams<T>& p, unsigned n) {
  if (n == 0) return TransferMatrix<T>::identity();
  const TransferMatrix<T> m = transfer_matrix(alpha, p);
  const T c1 = detail::power_weight(contraction_gap(alpha, p), n);
  // M^n = I + c1 (M - I); the diagonal of M - I is formed directly so that
  // nothing cancels when lambda2 is close to 1.
  const T d00 = -(p.a * (T(1) - alpha));
  const T d11 = -(p.b * alpha);
  return {T(1 + c1 * d00), T(c1 * m.m01), T(c1 * m.m10), T(1 + c1 * d11)};
}

/// lim M_alpha^n = 1/((1-alpha) a + alpha b) * [[alpha b, alpha a],
/// [(1-alpha) b, (1-alpha) a]], a rank-one projection.
template <Scalar T>
TransferMatrix<T> limit_matrix(const T& alpha, const RecombinationParams<T>& p) {
  const T gap = contraction_gap(alpha, p);
  if (gap == T(0)) {
    throw Error(ErrorKind::DegenerateLimit,
                "(1-alpha) a + alpha b vanishes for alpha=" + format_scalar(alpha) + ", a=" +
                    format_scalar(p.a) + ", b=" + format_scalar(p.b));
  }
  const T one_minus_alpha = T(1) - alpha;
  return {T(alpha * p.b / gap), T(alpha * p.a / gap), T(one_minus_alpha * p.b / gap),
          T(one_minus_alpha * p.a / gap)};
}

/// The weight A(x, u) = (b x + a u) / ((u0 + v0) a + (x0 + y0) b).
template <Scalar T>
T limit_weight(const T& first, const T& second, const GameteState<T>& initial,
               const RecombinationParams<T>& p) {
  const T denom = (initial.u + initial.v) * p.a + (initial.x + initial.y) * p.b;
  return T((p.b * first + p.a * second) / denom);
}

/// Closed-form limit of the orbit of s.  Boundary slices (alpha in {0, 1})
/// and the identity map return s itself; the floating backend treats
/// (x+y)(u+v) <= eps_membership as a boundary slice.
template <Scalar T>
GameteState<T> predicted_limit(const GameteState<T>& s, const RecombinationParams<T>& p,
                               const Tolerance<T>& tol = {}) {
  if (p.is_identity()) return s;
  const T alpha = alpha_of(s);
  const T beta = s.u + s.v;
  if (!(tol.eps_membership < T(alpha * beta))) return s;
  const T ax = limit_weight(s.x, s.u, s, p);
  const T ay = limit_weight(s.y, s.v, s, p);
  return {T(ax * alpha), T(ay * alpha), T(ax * beta), T(ay * beta)};
}

}  // namespace twolocus

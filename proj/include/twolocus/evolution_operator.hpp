#pragma once

// One-generation gamete-frequency map W on S^3,
//
//   x' = x + a D,  y' = y - a D,  u' = u - b D,  v' = v + b D,   D = yu - xv,
//
// in its additive form (production path) and its quadratic-stochastic form
// (verification path), together with the Jacobian and the spectrum at
// fixed points.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "twolocus/eigen_small.hpp"
#include "twolocus/error.hpp"
#include "twolocus/gamete_state.hpp"
#include "twolocus/scalar.hpp"

namespace twolocus {

enum Gamete : std::size_t { kX = 0, kY = 1, kU = 2, kV = 3 };

template <Scalar T>
using Matrix4 = std::array<std::array<T, 4>, 4>;

template <Scalar T>
GameteState<T> step_additive(const GameteState<T>& s, const RecombinationParams<T>& p) {
  const T d = linkage_disequilibrium(s);
  const T ad = p.a * d;
  const T bd = p.b * d;
  return {T(s.x + ad), T(s.y - ad), T(s.u - bd), T(s.v + bd)};
}

/// Quadratic form of W, valid on S^3 (uses x + y + u + v = 1).
template <Scalar T>
GameteState<T> step_qso(const GameteState<T>& s, const RecombinationParams<T>& p) {
  const T& x = s.x;
  const T& y = s.y;
  const T& u = s.u;
  const T& v = s.v;
  const T one_a = T(1) - p.a;
  const T one_b = T(1) - p.b;
  T xn = x * x + x * y + x * u + one_a * x * v + p.a * y * u;
  T yn = x * y + y * y + one_a * y * u + p.a * x * v + y * v;
  T un = x * u + one_b * y * u + u * u + p.b * x * v + u * v;
  T vn = one_b * x * v + y * v + p.b * y * u + u * v + v * v;
  return {std::move(xn), std::move(yn), std::move(un), std::move(vn)};
}

/// Symmetric coefficient tensor P[i][j][k] of the quadratic stochastic form:
/// x'_k = sum_{i,j} P[i][j][k] x_i x_j with P[i][j][k] = P[j][i][k].
template <Scalar T>
struct QsoTensor {
  std::array<std::array<std::array<T, 4>, 4>, 4> coeff{};

  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return coeff[i][j][k]; }
};

template <Scalar T>
QsoTensor<T> qso_tensor(const RecombinationParams<T>& p) {
  QsoTensor<T> t;
  auto set = [&t](std::size_t i, std::size_t j, std::size_t k, const T& monomial_coeff) {
    if (i == j) {
      t.coeff[i][i][k] = monomial_coeff;
    } else {
      // Cross monomials split evenly over (i,j) and (j,i).
      T h = monomial_coeff / T(2);
      t.coeff[i][j][k] = h;
      t.coeff[j][i][k] = h;
    }
  };
  const T one_a = T(1) - p.a;
  const T one_b = T(1) - p.b;
  // x'
  set(kX, kX, kX, T(1));
  set(kX, kY, kX, T(1));
  set(kX, kU, kX, T(1));
  set(kX, kV, kX, one_a);
  set(kY, kU, kX, p.a);
  // y'
  set(kX, kY, kY, T(1));
  set(kY, kY, kY, T(1));
  set(kY, kU, kY, one_a);
  set(kX, kV, kY, p.a);
  set(kY, kV, kY, T(1));
  // u'
  set(kX, kU, kU, T(1));
  set(kY, kU, kU, one_b);
  set(kU, kU, kU, T(1));
  set(kX, kV, kU, p.b);
  set(kU, kV, kU, T(1));
  // v'
  set(kX, kV, kV, one_b);
  set(kY, kV, kV, T(1));
  set(kY, kU, kV, p.b);
  set(kU, kV, kV, T(1));
  set(kV, kV, kV, T(1));
  return t;
}

template <Scalar T>
GameteState<T> apply_qso(const QsoTensor<T>& t, const GameteState<T>& s) {
  const std::array<T, 4> c = s.coords();
  std::array<T, 4> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    T acc(0);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) acc += t(i, j, k) * c[i] * c[j];
    }
    out[k] = acc;
  }
  return {out[0], out[1], out[2], out[3]};
}

/// Exact derivative of the additive form: J = I + g (grad D)^T with
/// g = (a, -a, -b, b) and grad D = (-v, u, y, -x).
template <Scalar T>
Matrix4<T> jacobian(const GameteState<T>& s, const RecombinationParams<T>& p) {
  const std::array<T, 4> g{p.a, T(-p.a), T(-p.b), p.b};
  const std::array<T, 4> grad{T(-s.v), s.u, s.y, T(-s.x)};
  Matrix4<T> j{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      j[r][c] = g[r] * grad[c];
      if (r == c) j[r][c] += T(1);
    }
  }
  return j;
}

template <Scalar T>
Matrix4d to_double(const Matrix4<T>& m) {
  Matrix4d out{};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) out[r][c] = to_double(m[r][c]);
  }
  return out;
}

template <Scalar T>
struct FixedPointSpectrum {
  /// {1, 1, 1, 1 - a(u+v) - b(x+y)} in ascending order.
  std::array<T, 4> closed_form;
  /// Numeric eigenvalues of the Jacobian (ascending by real part).
  std::array<std::complex<double>, 4> numeric;
  /// Max |closed_form[i] - numeric[i]| after pairing in sorted order.
  double discrepancy = 0.0;

  /// Number of numeric eigenvalues within `eps` of 1.
  int unit_multiplicity(double eps) const {
    return static_cast<int>(std::count_if(numeric.begin(), numeric.end(), [eps](const auto& z) {
      return std::abs(z - std::complex<double>(1.0, 0.0)) <= eps;
    }));
  }
};

/// Spectrum of the linearization at a fixed point.  J - I is rank one, so
/// the spectrum is {1, 1, 1, 1 + g . grad D}; it is cross-checked against a
/// numeric eigensolve of the full matrix.
template <Scalar T>
FixedPointSpectrum<T> fixed_point_spectrum(const GameteState<T>& s,
                                           const RecombinationParams<T>& p,
                                           const Tolerance<T>& tol = {}) {
  if (!is_fixed_point(s, p, tol)) {
    throw Error(ErrorKind::NotAFixedPoint,
                "state " + format_state(s) + " has D = " +
                    format_scalar(linkage_disequilibrium(s)) + " (not a fixed point)");
  }
  FixedPointSpectrum<T> out;
  T fourth = T(1) - p.a * (s.u + s.v) - p.b * (s.x + s.y);
  out.closed_form = {fourth, T(1), T(1), T(1)};
  std::sort(out.closed_form.begin(), out.closed_form.end(),
            [](const T& lhs, const T& rhs) { return lhs < rhs; });
  out.numeric = eigenvalues(to_double(jacobian(s, p)));
  for (std::size_t i = 0; i < 4; ++i) {
    out.discrepancy = std::max(
        out.discrepancy, std::abs(out.numeric[i] - std::complex<double>(to_double(out.closed_form[i]), 0.0)));
  }
  return out;
}

}  // namespace twolocus

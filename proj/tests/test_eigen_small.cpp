#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "twolocus/eigen_small.hpp"

using namespace twolocus;

TEST_CASE("diagonal and triangular matrices") {
  Matrix4d diag{{{3, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 0.5}}};
  auto ev = eigenvalues(diag);
  CHECK(ev[0].real() == doctest::Approx(-1));
  CHECK(ev[1].real() == doctest::Approx(0.5));
  CHECK(ev[2].real() == doctest::Approx(2));
  CHECK(ev[3].real() == doctest::Approx(3));

  Matrix4d upper{{{1, 5, -2, 7}, {0, 4, 3, 1}, {0, 0, -3, 2}, {0, 0, 0, 9}}};
  ev = eigenvalues(upper);
  CHECK(ev[0].real() == doctest::Approx(-3));
  CHECK(ev[3].real() == doctest::Approx(9));
}

TEST_CASE("complex conjugate pair") {
  // Rotation block plus two real eigenvalues.
  Matrix4d m{{{0, -2, 0, 0}, {2, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 5}}};
  auto ev = eigenvalues(m);
  CHECK(ev[0].real() == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::fabs(ev[0].imag()) == doctest::Approx(2));
  CHECK(ev[0].imag() == doctest::Approx(-ev[1].imag()));
  CHECK(ev[2].real() == doctest::Approx(1));
  CHECK(ev[3].real() == doctest::Approx(5));
}

TEST_CASE("similarity transforms of known spectra") {
  // A = S diag(d) S^{-1} with S unit lower triangular (inverse is exact to
  // form) recovers d.
  testing::Gen gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 4> d{};
    for (double& v : d) v = gen.uniform(-2.0, 2.0);
    double l10 = gen.uniform(-1, 1), l20 = gen.uniform(-1, 1), l21 = gen.uniform(-1, 1);
    double l30 = gen.uniform(-1, 1), l31 = gen.uniform(-1, 1), l32 = gen.uniform(-1, 1);
    Matrix4d S{{{1, 0, 0, 0}, {l10, 1, 0, 0}, {l20, l21, 1, 0}, {l30, l31, l32, 1}}};
    // Forward substitution for S^{-1}.
    Matrix4d Sinv{};
    for (int c = 0; c < 4; ++c) {
      for (int r = 0; r < 4; ++r) {
        double v = (r == c) ? 1.0 : 0.0;
        for (int k = 0; k < r; ++k) v -= S[r][k] * Sinv[k][c];
        Sinv[r][c] = v;
      }
    }
    Matrix4d A{};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += S[i][k] * d[k] * Sinv[k][j];
        A[i][j] = acc;
      }
    }
    auto ev = eigenvalues(A);
    std::sort(d.begin(), d.end());
    for (int i = 0; i < 4; ++i) {
      CHECK(std::fabs(ev[i].imag()) <= 1e-6);
      CHECK(ev[i].real() == doctest::Approx(d[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("dimension mismatch") {
  CHECK_THROWS(eigenvalues(std::vector<double>{1, 2, 3}, 2));
  CHECK(eigenvalues(std::vector<double>{}, 0).empty());
  auto one = eigenvalues(std::vector<double>{7.5}, 1);
  CHECK(one[0].real() == 7.5);
}

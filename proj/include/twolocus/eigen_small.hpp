#pragma once

// Eigenvalues of a small dense real matrix (Eigen's real Schur solver).  Used
// as an independent numeric cross-check of closed-form spectra.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace twolocus {

using Matrix4d = std::array<std::array<double, 4>, 4>;

/// All eigenvalues of a row-major n x n matrix, sorted by (real, imag).
/// Throws std::runtime_error if the QR iteration fails to converge.
std::vector<std::complex<double>> eigenvalues(std::vector<double> row_major, std::size_t n);

std::array<std::complex<double>, 4> eigenvalues(const Matrix4d& m);

}  // namespace twolocus

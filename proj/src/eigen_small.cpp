#include "twolocus/eigen_small.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <stdexcept>

namespace twolocus {

std::vector<std::complex<double>> eigenvalues(std::vector<double> row_major, std::size_t n) {
  if (row_major.size() != n * n) {
    throw std::invalid_argument("eigenvalues: matrix data does not match dimension");
  }
  if (n == 0) return {};
  const auto dim = static_cast<Eigen::Index>(n);
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      row_major.data(), dim, dim);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: QR iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<std::complex<double>> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end(), [](const auto& lhs, const auto& rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
    return lhs.imag() < rhs.imag();
  });
  return values;
}

std::array<std::complex<double>, 4> eigenvalues(const Matrix4d& m) {
  std::vector<double> flat;
  flat.reserve(16);
  for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
  const auto values = eigenvalues(std::move(flat), 4);
  return {values[0], values[1], values[2], values[3]};
}

}  // namespace twolocus

#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace polyinv {

/// An n x n real matrix with O^T O = I, checked on construction.
class OrthogonalMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  /// Throws std::invalid_argument unless the matrix is square and
  /// max |O^T O - I| <= kTolerance. Matrices are never re-orthogonalized.
  explicit OrthogonalMatrix(Eigen::MatrixXd matrix);

  static OrthogonalMatrix identity(int dimension);

  int dimension() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  double operator()(int row, int col) const { return matrix_(row, col); }
  double determinant() const { return matrix_.determinant(); }

  OrthogonalMatrix transpose() const;

  /// Matrix product this * other.
  OrthogonalMatrix operator*(const OrthogonalMatrix& other) const;

 private:
  Eigen::MatrixXd matrix_;
};

/// max_ij |O^T O - I|_ij.
double orthogonality_defect(const Eigen::MatrixXd& matrix);

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q. Determinant may be +1 or -1.
OrthogonalMatrix random_orthogonal(int dimension, std::mt19937_64& rng);

/// Deterministic variant seeded with `seed`.
OrthogonalMatrix random_orthogonal(int dimension, std::uint64_t seed);

/// Same as random_orthogonal, then flips the first column if needed so the
/// determinant has the requested sign (+1 or -1).
OrthogonalMatrix random_orthogonal_with_determinant(int dimension, int sign,
                                                    std::mt19937_64& rng);

}  // namespace polyinv

#include "polyinv/orthogonal.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace polyinv {

double orthogonality_defect(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd gram = matrix.transpose() * matrix;
  return (gram - Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols())).cwiseAbs().maxCoeff();
}

OrthogonalMatrix::OrthogonalMatrix(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("orthogonal matrix must be square and non-empty");
  }
  const double defect = orthogonality_defect(matrix_);
  if (!(defect <= kTolerance)) {
    throw std::invalid_argument("matrix is not orthogonal: max|O^T O - I| = " +
                                std::to_string(defect));
  }
}

OrthogonalMatrix OrthogonalMatrix::identity(int dimension) {
  return OrthogonalMatrix(Eigen::MatrixXd::Identity(dimension, dimension));
}

OrthogonalMatrix OrthogonalMatrix::transpose() const {
  return OrthogonalMatrix(matrix_.transpose());
}

OrthogonalMatrix OrthogonalMatrix::operator*(const OrthogonalMatrix& other) const {
  return OrthogonalMatrix(matrix_ * other.matrix_);
}

OrthogonalMatrix random_orthogonal(int dimension, std::mt19937_64& rng) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(dimension, dimension);
  for (int j = 0; j < dimension; ++j) {
    for (int i = 0; i < dimension; ++i) a(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dimension; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return OrthogonalMatrix(std::move(q));
}

OrthogonalMatrix random_orthogonal(int dimension, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_orthogonal(dimension, rng);
}

OrthogonalMatrix random_orthogonal_with_determinant(int dimension, int sign,
                                                    std::mt19937_64& rng) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  Eigen::MatrixXd q = random_orthogonal(dimension, rng).matrix();
  if ((q.determinant() > 0.0) != (sign > 0)) q.col(0) *= -1.0;
  return OrthogonalMatrix(std::move(q));
}

}  // namespace polyinv

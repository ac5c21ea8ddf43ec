#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyinv/exponent.hpp"

namespace polyinv {

class OrthogonalMatrix;

/// Degree-d homogeneous part of a polynomial in n variables.
///
/// Stores one coefficient P_l per sorted exponent, in graded-lexicographic
/// order. The fully symmetric tensor entries p_i = P_l / N_l are never stored;
/// see symmetric_tensor.hpp for the dense expansion.
class HomogeneousPart {
 public:
  HomogeneousPart(int dimension, int degree);
  HomogeneousPart(int dimension, int degree, std::vector<double> coeffs);

  int dimension() const noexcept { return dimension_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }

  double coefficient(const Exponent& e) const;
  void set_coefficient(const Exponent& e, double value);

  /// The symmetric tensor entry p_i for an index sequence i.
  double symmetric_entry(std::span<const int> indices) const;

  bool is_zero() const noexcept;

  bool operator==(const HomogeneousPart&) const = default;

 private:
  std::size_t position(const Exponent& e) const;

  int dimension_;
  int degree_;
  std::vector<double> coeffs_;
};

/// p(x) = sum_{d=0..D} p^d(x), a polynomial in n variables of max degree D.
/// Degrees with no terms are kept as all-zero parts.
class Polynomial {
 public:
  Polynomial(int dimension, int max_degree);
  explicit Polynomial(std::vector<HomogeneousPart> parts);

  int dimension() const noexcept { return dimension_; }
  int max_degree() const noexcept { return static_cast<int>(parts_.size()) - 1; }

  const HomogeneousPart& part(int degree) const;
  HomogeneousPart& part(int degree);
  std::span<const HomogeneousPart> parts() const noexcept { return parts_; }

  double coefficient(const Exponent& e) const;
  void set_coefficient(const Exponent& e, double value);

  /// Copy widened (zero-padded) or truncated to the given max degree.
  Polynomial with_max_degree(int max_degree) const;

  /// Number of stored coefficients across all parts.
  std::size_t term_count() const noexcept;

  bool is_zero() const noexcept;

  bool operator==(const Polynomial&) const = default;

 private:
  int dimension_;
  std::vector<HomogeneousPart> parts_;
};

/// p(x) = sum_l P_l x^l.
double evaluate(const Polynomial& p, std::span<const double> x);
double evaluate(const Polynomial& p, const Eigen::VectorXd& x);

/// p'(x) = p(O x). Coefficients transform as p'_i = sum_a p_a O_{a i} per
/// tensor slot.
Polynomial apply_rotation(const Polynomial& p, const OrthogonalMatrix& rotation);

/// The symmetric matrix [p] of the degree-2 part: diagonal P_(..2..),
/// off-diagonal P_l / 2. Zero if max degree < 2.
Eigen::MatrixXd quadratic_matrix(const Polynomial& p);

/// Linear coefficients (p_1..p_n) of the degree-1 part.
Eigen::VectorXd linear_vector(const Polynomial& p);

/// V(p): entries P_l / sqrt(N_l) over all |l| <= D, graded-lex order.
Eigen::VectorXd vectorize(const Polynomial& p);

/// vectorize(p) . vectorize(q); requires equal dimension and max degree.
double frobenius_dot(const Polynomial& p, const Polynomial& q);

}  // namespace polyinv

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "polyinv/exponent.hpp"
#include "polyinv/normalization.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

/// Weighted samples (x^i, y^i). One point per row of `points`.
class PointCloud {
 public:
  /// Empty `values` and `weights` default to all ones. Throws
  /// std::invalid_argument on length mismatch, no points, or a weight <= 0.
  explicit PointCloud(Eigen::MatrixXd points, Eigen::VectorXd values = {},
                      Eigen::VectorXd weights = {});

  int dimension() const noexcept { return static_cast<int>(points_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }

  const Eigen::MatrixXd& points() const noexcept { return points_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }

  Eigen::VectorXd point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }

  PointCloud with_points(Eigen::MatrixXd points) const;
  PointCloud with_values(Eigen::VectorXd values) const;

 private:
  Eigen::MatrixXd points_;
  Eigen::VectorXd values_;
  Eigen::VectorXd weights_;
};

enum class RadialWeight { none, gaussian, exponential };

struct FitConfig {
  int max_degree = 2;
  /// Ridge strength c. Unset means 1e-8 times the mean diagonal of the
  /// normal matrix.
  std::optional<double> ridge;
  RadialWeight radial = RadialWeight::none;
  /// Fit only degrees D-1 and D, evaluated at x / |x|.
  bool spherical = false;

  void validate() const;
};

inline constexpr double kDefaultRelativeRidge = 1e-8;
inline constexpr double kPseudoInverseCutoff = 1e-10;

/// Weighted centroid moved to the origin; with unit_mean_distance the
/// weighted mean |x| becomes 1. Throws NumericalError when that scale is 0.
std::pair<PointCloud, NormalizationRecord> normalize(const PointCloud& cloud, ScaleMode mode);

/// Maps every point x to O x.
PointCloud rotate_points(const PointCloud& cloud, const OrthogonalMatrix& rotation);

/// Exponents used as fit columns, in catalog order.
std::vector<Exponent> fit_basis(int dimension, const FitConfig& config);

struct DesignSystem {
  Eigen::MatrixXd matrix;  // rows: sqrt(w_i) * radial(x_i) * x_i^l
  Eigen::VectorXd target;  // sqrt(w_i) * y_i
  std::vector<Exponent> columns;
};

DesignSystem design_matrix(const PointCloud& cloud, const FitConfig& config);

struct FitDiagnostics {
  int rank = 0;
  /// Root-mean-square of the weighted residual rows.
  double residual = 0.0;
  /// Ratio of largest to smallest retained singular value.
  double condition = 0.0;
  double ridge = 0.0;
  std::size_t samples = 0;
  std::size_t terms = 0;
};

struct FitResult {
  Polynomial polynomial;
  FitDiagnostics diagnostics;
};

/// Minimizes |M a - b|^2 + c |V(a)|^2 through a truncated SVD pseudo-inverse,
/// where V weights each coefficient by 1/sqrt(N_l) so the penalty is the
/// rotation-invariant Frobenius norm of the polynomial.
FitResult fit(const PointCloud& cloud, const FitConfig& config);

enum class SphericalTarget {
  radius,  // y^i = |x^i|: spherical envelope
  values,  // y^i as supplied: texture on a sphere
};

/// Spherical fit of degrees D-1 and D on directions x / |x|. Throws
/// std::invalid_argument for a point at the origin.
FitResult fit_spherical(const PointCloud& cloud, int max_degree,
                        SphericalTarget target = SphericalTarget::radius,
                        std::optional<double> ridge = std::nullopt);

}  // namespace polyinv

#include "polyinv/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "polyinv/errors.hpp"

namespace polyinv {

PointCloud::PointCloud(Eigen::MatrixXd points, Eigen::VectorXd values, Eigen::VectorXd weights)
    : points_(std::move(points)), values_(std::move(values)), weights_(std::move(weights)) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw std::invalid_argument("point cloud needs at least one point of dimension >= 1");
  }
  if (values_.size() == 0) values_ = Eigen::VectorXd::Ones(points_.rows());
  if (weights_.size() == 0) weights_ = Eigen::VectorXd::Ones(points_.rows());
  if (values_.size() != points_.rows() || weights_.size() != points_.rows()) {
    throw std::invalid_argument("points, values and weights differ in length");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_(i) > 0.0)) {
      throw std::invalid_argument("point " + std::to_string(i) + " has non-positive weight");
    }
  }
}

PointCloud PointCloud::with_points(Eigen::MatrixXd points) const {
  return PointCloud(std::move(points), values_, weights_);
}

PointCloud PointCloud::with_values(Eigen::VectorXd values) const {
  return PointCloud(points_, std::move(values), weights_);
}

void FitConfig::validate() const {
  if (max_degree < 0) throw std::invalid_argument("fit degree must be >= 0");
  if (spherical && max_degree < 2) throw std::invalid_argument("spherical fit needs degree >= 2");
  if (ridge && !(*ridge >= 0.0)) throw std::invalid_argument("ridge must be >= 0");
}

std::pair<PointCloud, NormalizationRecord> normalize(const PointCloud& cloud, ScaleMode mode) {
  const Eigen::VectorXd& w = cloud.weights();
  const double total = w.sum();
  NormalizationRecord record;
  record.mode = mode;
  record.centroid = (cloud.points().transpose() * w) / total;
  Eigen::MatrixXd centered = cloud.points().rowwise() - record.centroid.transpose();
  if (mode == ScaleMode::unit_mean_distance) {
    const double mean_distance = centered.rowwise().norm().dot(w) / total;
    if (!(mean_distance > 0.0)) {
      throw NumericalError("all points coincide with the centroid; scale normalization is undefined");
    }
    record.scale = mean_distance;
    centered /= mean_distance;
  }
  return {cloud.with_points(std::move(centered)), std::move(record)};
}

PointCloud rotate_points(const PointCloud& cloud, const OrthogonalMatrix& rotation) {
  if (rotation.dimension() != cloud.dimension()) {
    throw DimensionError("rotation dimension does not match point dimension");
  }
  // rows are points: (O x)^T = x^T O^T
  return cloud.with_points(cloud.points() * rotation.matrix().transpose());
}

std::vector<Exponent> fit_basis(int dimension, const FitConfig& config) {
  config.validate();
  if (!config.spherical) return enumerate_exponents_up_to(dimension, config.max_degree);
  auto columns = enumerate_exponents(dimension, config.max_degree - 1);
  for (auto& e : enumerate_exponents(dimension, config.max_degree)) columns.push_back(std::move(e));
  return columns;
}

DesignSystem design_matrix(const PointCloud& cloud, const FitConfig& config) {
  DesignSystem system;
  system.columns = fit_basis(cloud.dimension(), config);
  const auto rows = static_cast<Eigen::Index>(cloud.size());
  const auto cols = static_cast<Eigen::Index>(system.columns.size());
  system.matrix.resize(rows, cols);
  system.target.resize(rows);

  Eigen::VectorXd x(cloud.dimension());
  for (Eigen::Index i = 0; i < rows; ++i) {
    x = cloud.points().row(i).transpose();
    const double radius = x.norm();
    double row_scale = std::sqrt(cloud.weights()(i));
    switch (config.radial) {
      case RadialWeight::none: break;
      case RadialWeight::gaussian: row_scale *= std::exp(-radius * radius); break;
      case RadialWeight::exponential: row_scale *= std::exp(-radius); break;
    }
    if (config.spherical) {
      if (radius == 0.0) {
        throw std::invalid_argument("point " + std::to_string(i) + " lies at the origin; direction undefined");
      }
      x /= radius;
    }
    const std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    for (Eigen::Index j = 0; j < cols; ++j) {
      system.matrix(i, j) = row_scale * monomial(system.columns[static_cast<std::size_t>(j)], xs);
    }
    system.target(i) = std::sqrt(cloud.weights()(i)) * cloud.values()(i);
  }
  return system;
}

FitResult fit(const PointCloud& cloud, const FitConfig& config) {
  const DesignSystem system = design_matrix(cloud, config);
  const Eigen::Index cols = system.matrix.cols();

  // a_l = sqrt(N_l) u_l, so |u|^2 = sum_l P_l^2 / N_l
  Eigen::VectorXd column_scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    column_scale(j) = std::sqrt(static_cast<double>(multinomial_weight(system.columns[static_cast<std::size_t>(j)])));
  }
  const Eigen::MatrixXd scaled = system.matrix * column_scale.asDiagonal();

  double ridge = 0.0;
  if (config.ridge) {
    ridge = *config.ridge;
  } else {
    ridge = kDefaultRelativeRidge * scaled.colwise().squaredNorm().mean();
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const Eigen::VectorXd projected = svd.matrixU().transpose() * system.target;

  Eigen::VectorXd filtered = Eigen::VectorXd::Zero(sigma.size());
  int rank = 0;
  double sigma_min_kept = 0.0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    const double s = sigma(k);
    if (sigma_max == 0.0 || s <= kPseudoInverseCutoff * sigma_max) continue;
    filtered(k) = s / (s * s + ridge) * projected(k);
    ++rank;
    sigma_min_kept = s;
  }
  const Eigen::VectorXd u = svd.matrixV() * filtered;
  const Eigen::VectorXd coeffs = column_scale.cwiseProduct(u);

  Polynomial p(cloud.dimension(), config.max_degree);
  for (Eigen::Index j = 0; j < cols; ++j) p.set_coefficient(system.columns[static_cast<std::size_t>(j)], coeffs(j));

  FitResult result{std::move(p), {}};
  auto& diag = result.diagnostics;
  diag.rank = rank;
  diag.residual = std::sqrt((system.matrix * coeffs - system.target).squaredNorm() /
                            static_cast<double>(system.matrix.rows()));
  diag.condition = rank > 0 ? sigma_max / sigma_min_kept : std::numeric_limits<double>::infinity();
  diag.ridge = ridge;
  diag.samples = cloud.size();
  diag.terms = static_cast<std::size_t>(cols);
  return result;
}

FitResult fit_spherical(const PointCloud& cloud, int max_degree, SphericalTarget target,
                        std::optional<double> ridge) {
  FitConfig config;
  config.max_degree = max_degree;
  config.spherical = true;
  config.ridge = ridge;
  config.validate();
  if (target == SphericalTarget::values) return fit(cloud, config);

  Eigen::VectorXd radii = cloud.points().rowwise().norm();
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    if (radii(i) == 0.0) {
      throw std::invalid_argument("point " + std::to_string(i) + " lies at the origin; direction undefined");
    }
  }
  return fit(cloud.with_values(std::move(radii)), config);
}

}  // namespace polyinv

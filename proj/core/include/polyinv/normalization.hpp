#pragma once

#include <Eigen/Dense>

namespace polyinv {

enum class ScaleMode { none, unit_mean_distance };

/// Position and scale normalization applied to a point cloud before fitting.
/// Points map as x -> (x - centroid) / scale.
struct NormalizationRecord {
  Eigen::VectorXd centroid;
  double scale = 1.0;
  ScaleMode mode = ScaleMode::none;
};

}  // namespace polyinv

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyinv/polynomial.hpp"

namespace polyinv {

/// Dense order-k tensor with every mode of extent n, row-major
/// (last index fastest). Order 0 holds a single scalar.
class DenseTensor {
 public:
  DenseTensor(int extent, int order);
  DenseTensor(int extent, int order, std::vector<double> data);

  int extent() const noexcept { return extent_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double operator()(std::span<const int> indices) const { return data_[offset(indices)]; }
  double& operator()(std::span<const int> indices) { return data_[offset(indices)]; }

  std::size_t offset(std::span<const int> indices) const;

  /// Contract `matrix` into mode `mode`: T'[.., i, ..] = sum_a T[.., a, ..] M(a, i).
  DenseTensor transform_mode(int mode, const Eigen::MatrixXd& matrix) const;

 private:
  int extent_;
  int order_;
  std::vector<double> data_;
};

/// Odometer over {0..extent-1}^order; returns false after the last tuple.
bool next_index_tuple(std::span<int> indices, int extent);

/// Materializes p_i = P_l / N_l for every index sequence of the part.
DenseTensor expand_symmetric(const HomogeneousPart& part);

/// Collects P_l = sum_{i : L(i) = l} T_i. For a symmetric tensor this is the
/// inverse of expand_symmetric.
HomogeneousPart collect_symmetric(const DenseTensor& tensor);

}  // namespace polyinv

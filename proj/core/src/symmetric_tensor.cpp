#include "polyinv/symmetric_tensor.hpp"

#include <stdexcept>

#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

std::size_t dense_size(int extent, int order) {
  std::size_t size = 1;
  for (int k = 0; k < order; ++k) size *= static_cast<std::size_t>(extent);
  return size;
}

}  // namespace

DenseTensor::DenseTensor(int extent, int order)
    : DenseTensor(extent, order, std::vector<double>(dense_size(extent, order), 0.0)) {}

DenseTensor::DenseTensor(int extent, int order, std::vector<double> data)
    : extent_(extent), order_(order), data_(std::move(data)) {
  if (extent < 1 || order < 0) throw std::invalid_argument("invalid tensor shape");
  if (data_.size() != dense_size(extent, order)) {
    throw DimensionError("tensor data size does not match shape");
  }
}

std::size_t DenseTensor::offset(std::span<const int> indices) const {
  std::size_t off = 0;
  for (int i : indices) off = off * static_cast<std::size_t>(extent_) + static_cast<std::size_t>(i);
  return off;
}

DenseTensor DenseTensor::transform_mode(int mode, const Eigen::MatrixXd& matrix) const {
  if (mode < 0 || mode >= order_) throw std::out_of_range("tensor mode out of range");
  if (matrix.rows() != extent_ || matrix.cols() != extent_) {
    throw DimensionError("transform matrix does not match tensor extent");
  }
  // view the data as [outer][extent][inner] around the chosen mode
  const std::size_t n = static_cast<std::size_t>(extent_);
  const std::size_t inner = dense_size(extent_, order_ - mode - 1);
  const std::size_t outer = dense_size(extent_, mode);
  DenseTensor out(extent_, order_);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* src = data_.data() + o * n * inner;
    double* dst = out.data_.data() + o * n * inner;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        const double m = matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
        if (m == 0.0) continue;
        for (std::size_t r = 0; r < inner; ++r) dst[i * inner + r] += m * src[a * inner + r];
      }
    }
  }
  return out;
}

bool next_index_tuple(std::span<int> indices, int extent) {
  for (std::size_t k = indices.size(); k-- > 0;) {
    if (++indices[k] < extent) return true;
    indices[k] = 0;
  }
  return false;
}

DenseTensor expand_symmetric(const HomogeneousPart& part) {
  const int n = part.dimension();
  const int d = part.degree();
  DenseTensor out(n, d);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::size_t flat = 0;
  do {
    out.data()[flat++] = part.symmetric_entry(idx);
  } while (next_index_tuple(idx, n));
  return out;
}

HomogeneousPart collect_symmetric(const DenseTensor& tensor) {
  const int n = tensor.extent();
  const int d = tensor.order();
  HomogeneousPart part(n, d);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::size_t flat = 0;
  auto coeffs = part.coefficients();
  do {
    coeffs[exponent_rank(Exponent::from_indices(idx, n))] += tensor.data()[flat++];
  } while (next_index_tuple(idx, n));
  return part;
}

}  // namespace polyinv

#include "polyinv/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polyinv/errors.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/symmetric_tensor.hpp"

namespace polyinv {

HomogeneousPart::HomogeneousPart(int dimension, int degree)
    : HomogeneousPart(dimension, degree,
                      std::vector<double>(monomial_count(dimension, degree), 0.0)) {}

HomogeneousPart::HomogeneousPart(int dimension, int degree, std::vector<double> coeffs)
    : dimension_(dimension), degree_(degree), coeffs_(std::move(coeffs)) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (coeffs_.size() != monomial_count(dimension, degree)) {
    throw DimensionError("degree-" + std::to_string(degree) + " part in " +
                         std::to_string(dimension) + " variables needs " +
                         std::to_string(monomial_count(dimension, degree)) + " coefficients");
  }
}

std::size_t HomogeneousPart::position(const Exponent& e) const {
  if (e.dimension() != dimension_ || e.degree() != degree_) {
    throw DimensionError("exponent does not belong to this homogeneous part");
  }
  return exponent_rank(e);
}

double HomogeneousPart::coefficient(const Exponent& e) const { return coeffs_[position(e)]; }

void HomogeneousPart::set_coefficient(const Exponent& e, double value) {
  coeffs_[position(e)] = value;
}

double HomogeneousPart::symmetric_entry(std::span<const int> indices) const {
  const Exponent e = Exponent::from_indices(indices, dimension_);
  return coefficient(e) / static_cast<double>(multinomial_weight(e));
}

bool HomogeneousPart::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

Polynomial::Polynomial(int dimension, int max_degree) : dimension_(dimension) {
  if (max_degree < 0) throw std::invalid_argument("max degree must be >= 0");
  parts_.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 0; d <= max_degree; ++d) parts_.emplace_back(dimension, d);
}

Polynomial::Polynomial(std::vector<HomogeneousPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("polynomial needs at least the constant part");
  dimension_ = parts_.front().dimension();
  for (std::size_t d = 0; d < parts_.size(); ++d) {
    if (parts_[d].dimension() != dimension_ || parts_[d].degree() != static_cast<int>(d)) {
      throw DimensionError("part " + std::to_string(d) + " has inconsistent dimension or degree");
    }
  }
}

const HomogeneousPart& Polynomial::part(int degree) const {
  return parts_.at(static_cast<std::size_t>(degree));
}

HomogeneousPart& Polynomial::part(int degree) { return parts_.at(static_cast<std::size_t>(degree)); }

double Polynomial::coefficient(const Exponent& e) const {
  if (e.degree() > max_degree()) return 0.0;
  return part(e.degree()).coefficient(e);
}

void Polynomial::set_coefficient(const Exponent& e, double value) {
  if (e.degree() > max_degree()) {
    throw DimensionError("exponent degree exceeds polynomial max degree");
  }
  part(e.degree()).set_coefficient(e, value);
}

Polynomial Polynomial::with_max_degree(int max_degree) const {
  Polynomial out(dimension_, max_degree);
  for (int d = 0; d <= std::min(max_degree, this->max_degree()); ++d) out.part(d) = part(d);
  return out;
}

std::size_t Polynomial::term_count() const noexcept {
  std::size_t total = 0;
  for (const auto& part : parts_) total += part.size();
  return total;
}

bool Polynomial::is_zero() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.is_zero(); });
}

double evaluate(const Polynomial& p, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(p.dimension())) {
    throw DimensionError("point has dimension " + std::to_string(x.size()) +
                         ", polynomial expects " + std::to_string(p.dimension()));
  }
  double total = 0.0;
  for (const auto& part : p.parts()) {
    const auto exponents = enumerate_exponents(p.dimension(), part.degree());
    const auto coeffs = part.coefficients();
    for (std::size_t k = 0; k < exponents.size(); ++k) {
      if (coeffs[k] != 0.0) total += coeffs[k] * monomial(exponents[k], x);
    }
  }
  return total;
}

double evaluate(const Polynomial& p, const Eigen::VectorXd& x) {
  return evaluate(p, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Polynomial apply_rotation(const Polynomial& p, const OrthogonalMatrix& rotation) {
  if (rotation.dimension() != p.dimension()) {
    throw DimensionError("rotation dimension does not match polynomial dimension");
  }
  std::vector<HomogeneousPart> parts;
  parts.reserve(p.parts().size());
  for (const auto& part : p.parts()) {
    if (part.degree() == 0 || part.is_zero()) {
      parts.push_back(part);
      continue;
    }
    DenseTensor t = expand_symmetric(part);
    for (int mode = 0; mode < part.degree(); ++mode) t = t.transform_mode(mode, rotation.matrix());
    parts.push_back(collect_symmetric(t));
  }
  return Polynomial(std::move(parts));
}

Eigen::MatrixXd quadratic_matrix(const Polynomial& p) {
  const int n = p.dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (p.max_degree() < 2) return m;
  const auto& part = p.part(2);
  const auto exponents = enumerate_exponents(n, 2);
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    const auto idx = exponents[k].sorted_indices();
    const double c = part.coefficients()[k];
    if (idx[0] == idx[1]) {
      m(idx[0], idx[0]) = c;
    } else {
      m(idx[0], idx[1]) = c / 2.0;
      m(idx[1], idx[0]) = c / 2.0;
    }
  }
  return m;
}

Eigen::VectorXd linear_vector(const Polynomial& p) {
  const int n = p.dimension();
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  if (p.max_degree() < 1) return v;
  // degree-1 exponents enumerate as e_1, e_2, ..., e_n
  const auto coeffs = p.part(1).coefficients();
  for (int i = 0; i < n; ++i) v(i) = coeffs[static_cast<std::size_t>(i)];
  return v;
}

Eigen::VectorXd vectorize(const Polynomial& p) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(p.term_count()));
  Eigen::Index k = 0;
  for (const auto& part : p.parts()) {
    const auto exponents = enumerate_exponents(p.dimension(), part.degree());
    const auto coeffs = part.coefficients();
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      out(k++) = coeffs[i] / std::sqrt(static_cast<double>(multinomial_weight(exponents[i])));
    }
  }
  return out;
}

double frobenius_dot(const Polynomial& p, const Polynomial& q) {
  if (p.dimension() != q.dimension() || p.max_degree() != q.max_degree()) {
    throw DimensionError("frobenius_dot needs equal dimension and max degree");
  }
  return vectorize(p).dot(vectorize(q));
}

}  // namespace polyinv

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "polyinv/catalog.hpp"
#include "polyinv/errors.hpp"

namespace polyinv {

std::vector<double> elementary_from_power_sums(std::span<const double> power_sums) {
  // k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) p_i
  const std::size_t k_max = power_sums.size();
  std::vector<double> e(k_max + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double term = e[k - i] * power_sums[i - 1];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[k] = acc / static_cast<double>(k);
  }
  return e;
}

double power_sum_from_lower(std::span<const double> power_sums, int k) {
  const int n = static_cast<int>(power_sums.size());
  if (k < 1) throw std::invalid_argument("power sum index must be >= 1");
  if (k <= n) return power_sums[static_cast<std::size_t>(k - 1)];
  const auto e = elementary_from_power_sums(power_sums);
  // p_k = sum_{i=1..k-1} (-1)^(i-1) e_i p_(k-i) + (-1)^(k-1) k e_k, with e_i = 0 for i > n
  std::vector<double> p(power_sums.begin(), power_sums.end());
  for (int j = n + 1; j <= k; ++j) {
    double acc = 0.0;
    for (int i = 1; i <= std::min(n, j - 1); ++i) {
      const double term = e[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(j - i - 1)];
      acc += (i % 2 == 1) ? term : -term;
    }
    p.push_back(acc);
  }
  return p.back();
}

std::vector<double> eigenvalues_from_power_sums(std::span<const double> power_sums) {
  const int n = static_cast<int>(power_sums.size());
  if (n < 1) throw std::invalid_argument("need at least one power sum");
  const auto e = elementary_from_power_sums(power_sums);

  // characteristic polynomial lambda^n + c_(n-1) lambda^(n-1) + ... + c_0,
  // c_(n-k) = (-1)^k e_k
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    c[static_cast<std::size_t>(n - k)] = (k % 2 == 0 ? 1.0 : -1.0) * e[static_cast<std::size_t>(k)];
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("characteristic polynomial root finding failed");
  const Eigen::VectorXcd roots = solver.eigenvalues();

  const double scale = std::max(1.0, roots.cwiseAbs().maxCoeff());
  std::vector<double> lambda;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    if (std::abs(roots(i).imag()) > 1e-6 * scale) {
      throw NumericalError("trace powers are inconsistent with a real symmetric spectrum");
    }
    double x = roots(i).real();
    // Newton polishing on the characteristic polynomial
    for (int it = 0; it < 3; ++it) {
      double value = 1.0;
      double slope = 0.0;
      for (int k = n - 1; k >= 0; --k) {
        slope = slope * x + value;
        value = value * x + c[static_cast<std::size_t>(k)];
      }
      if (slope == 0.0) break;
      const double step = value / slope;
      if (!std::isfinite(step)) break;
      x -= step;
    }
    lambda.push_back(x);
  }
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

namespace {

double require(const FeatureVector& f, const std::string& name) {
  const auto value = f.find(name);
  if (!value) throw std::invalid_argument("feature vector lacks '" + name + "'");
  return *value;
}

// Undo sign(v)|v|^(1/k) if the vector was order-normalized.
double raw_value(const FeatureVector& f, const std::string& name) {
  const double v = require(f, name);
  if (!f.meta.order_normalized) return v;
  for (const auto& e : f.entries) {
    if (e.name == name) return std::copysign(std::pow(std::abs(v), e.order), v);
  }
  return v;
}

}  // namespace

Polynomial reconstruct_degree2(const FeatureVector& features, int dimension) {
  const int n = dimension;
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");

  std::vector<double> traces;
  for (int m = 1; m <= n; ++m) traces.push_back(raw_value(features, "trace.m" + std::to_string(m)));
  const auto lambda = eigenvalues_from_power_sums(traces);

  const double scale = std::max(std::abs(lambda.front()), std::abs(lambda.back()));
  for (int i = 0; i + 1 < n; ++i) {
    const double gap = lambda[static_cast<std::size_t>(i + 1)] - lambda[static_cast<std::size_t>(i)];
    if (!(gap > kDegenerateSpectrumGap * scale)) {
      throw NumericalError("degenerate eigenspectrum of the quadratic part; canonical form is not unique");
    }
  }

  // sum_a lambda_a^m w_a = M_m for m = 0..n-1, w_a = p_a^2
  Eigen::MatrixXd vandermonde(n, n);
  Eigen::VectorXd moments(n);
  for (int m = 0; m < n; ++m) {
    const std::string name = "mixed.d1.m" + std::to_string(m);
    moments(m) = (m == 0 && !features.find(name)) ? raw_value(features, "lin.norm2") : raw_value(features, name);
    for (int a = 0; a < n; ++a) vandermonde(m, a) = std::pow(lambda[static_cast<std::size_t>(a)], m);
  }
  const Eigen::VectorXd weights = vandermonde.fullPivLu().solve(moments);

  Polynomial out(n, 2);
  out.part(0).coefficients()[0] = raw_value(features, "const");
  const double tolerance = 1e-8 * std::max(1.0, std::abs(moments(0)));
  for (int a = 0; a < n; ++a) {
    double w = weights(a);
    if (w < -tolerance) {
      throw NumericalError("recovered squared linear coefficient " + std::to_string(w) +
                           " is negative; invariants are inconsistent");
    }
    w = std::max(w, 0.0);
    std::vector<int> lin(static_cast<std::size_t>(n), 0);
    lin[static_cast<std::size_t>(a)] = 1;
    out.set_coefficient(Exponent(lin), std::sqrt(w));
    std::vector<int> quad(static_cast<std::size_t>(n), 0);
    quad[static_cast<std::size_t>(a)] = 2;
    out.set_coefficient(Exponent(quad), lambda[static_cast<std::size_t>(a)]);
  }
  return out;
}

}  // namespace polyinv

#include "polyinv/harmonics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "polyinv/errors.hpp"

namespace polyinv {

HarmonicExpansion HarmonicExpansion::zero(HarmonicKind kind, int max_l) {
  HarmonicExpansion h;
  h.kind = kind;
  h.max_l = max_l;
  for (const auto& key : harmonic_keys(kind, max_l)) h.coeffs[key] = 0.0;
  return h;
}

double HarmonicExpansion::coefficient(int l, int m) const {
  const auto it = coeffs.find({l, m});
  return it == coeffs.end() ? 0.0 : it->second;
}

int harmonic_terms(HarmonicKind kind, int l) {
  if (l < 0) return 0;
  if (kind == HarmonicKind::cylindrical) return l == 0 ? 1 : 2;
  return 2 * l + 1;
}

std::vector<std::pair<int, int>> harmonic_keys(HarmonicKind kind, int max_l) {
  if (max_l < 0) throw std::invalid_argument("max_l must be >= 0");
  std::vector<std::pair<int, int>> keys;
  for (int l = 0; l <= max_l; ++l) {
    if (kind == HarmonicKind::cylindrical) {
      if (l == 0) {
        keys.emplace_back(0, 0);
      } else {
        keys.emplace_back(l, +1);
        keys.emplace_back(l, -1);
      }
    } else {
      for (int m = -l; m <= l; ++m) keys.emplace_back(l, m);
    }
  }
  return keys;
}

namespace {

double cylindrical_function(int l, int m, double phi) {
  if (l == 0) return 1.0;
  return m > 0 ? std::cos(l * phi) : std::sin(l * phi);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

HarmonicExpansion cylindrical_fit(std::span<const CylindricalSample> samples, int max_l) {
  if (max_l < 0) throw std::invalid_argument("max_l must be >= 0");
  const auto keys = harmonic_keys(HarmonicKind::cylindrical, max_l);
  if (samples.size() < keys.size()) {
    throw std::invalid_argument("cylindrical fit to degree " + std::to_string(max_l) + " needs " +
                                std::to_string(keys.size()) + " samples, got " +
                                std::to_string(samples.size()));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(keys.size()));
  Eigen::VectorXd b(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto& [l, m] = keys[static_cast<std::size_t>(j)];
      a(i, j) = cylindrical_function(l, m, s.phi);
    }
    b(i) = s.r;
  }
  const Eigen::VectorXd x = least_squares(a, b);
  HarmonicExpansion h = HarmonicExpansion::zero(HarmonicKind::cylindrical, max_l);
  for (std::size_t j = 0; j < keys.size(); ++j) h.coeffs[keys[j]] = x(static_cast<Eigen::Index>(j));
  return h;
}

double cylindrical_evaluate(const HarmonicExpansion& h, double phi) {
  if (h.kind != HarmonicKind::cylindrical) throw std::invalid_argument("expansion is not cylindrical");
  double r = 0.0;
  for (const auto& [key, c] : h.coeffs) r += c * cylindrical_function(key.first, key.second, phi);
  return r;
}

std::vector<double> cylindrical_invariants(const HarmonicExpansion& h) {
  if (h.kind != HarmonicKind::cylindrical) throw std::invalid_argument("expansion is not cylindrical");
  std::vector<double> out;
  out.push_back(h.coefficient(0, 0) * h.coefficient(0, 0));
  for (int l = 1; l <= h.max_l; ++l) {
    const double c = h.coefficient(l, +1);
    const double s = h.coefficient(l, -1);
    out.push_back(c * c + s * s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Real spherical harmonics

namespace {

// Unnormalized Cartesian forms of the real spherical harmonics.
double spherical_form(int l, int m, double x, double y, double z) {
  switch (l) {
    case 0: return 1.0;
    case 1:
      switch (m) {
        case -1: return y;
        case 0: return z;
        case 1: return x;
      }
      break;
    case 2:
      switch (m) {
        case -2: return x * y;
        case -1: return y * z;
        case 0: return -x * x - y * y + 2.0 * z * z;
        case 1: return z * x;
        case 2: return x * x - y * y;
      }
      break;
    case 3:
      switch (m) {
        case -3: return (3.0 * x * x - y * y) * y;
        case -2: return x * y * z;
        case -1: return y * (4.0 * z * z - x * x - y * y);
        case 0: return z * (2.0 * z * z - 3.0 * x * x - 3.0 * y * y);
        case 1: return x * (4.0 * z * z - x * x - y * y);
        case 2: return z * (x * x - y * y);
        case 3: return (x * x - 3.0 * y * y) * x;
      }
      break;
  }
  throw std::invalid_argument("no spherical harmonic for l=" + std::to_string(l) + ", m=" + std::to_string(m));
}

// 1 / sqrt(integral over S^2 of form^2), by Gauss-Legendre in cos(theta)
// and the trapezoid rule in phi (exact for these trigonometric degrees).
using ScaleTable = std::array<std::array<double, 2 * kMaxSphericalDegree + 1>, kMaxSphericalDegree + 1>;

ScaleTable compute_scales() {
  constexpr int kPhiPoints = 32;
  ScaleTable table{};
  for (int l = 0; l <= kMaxSphericalDegree; ++l) {
    for (int m = -l; m <= l; ++m) {
      auto ring = [&](double t) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        double acc = 0.0;
        for (int k = 0; k < kPhiPoints; ++k) {
          const double phi = 2.0 * std::numbers::pi * k / kPhiPoints;
          const double f = spherical_form(l, m, s * std::cos(phi), s * std::sin(phi), t);
          acc += f * f;
        }
        return acc * 2.0 * std::numbers::pi / kPhiPoints;
      };
      const double norm2 = boost::math::quadrature::gauss<double, 10>::integrate(ring, -1.0, 1.0);
      table[static_cast<std::size_t>(l)][static_cast<std::size_t>(m + l)] = 1.0 / std::sqrt(norm2);
    }
  }
  return table;
}

const ScaleTable& scales() {
  static const ScaleTable table = compute_scales();
  return table;
}

}  // namespace

double spherical_basis(int l, int m, const Eigen::Vector3d& direction) {
  if (l < 0 || l > kMaxSphericalDegree) {
    throw std::invalid_argument("spherical harmonics are tabulated for l <= 3, got l=" + std::to_string(l));
  }
  if (m < -l || m > l) throw std::invalid_argument("spherical harmonic order m outside -l..l");
  return scales()[static_cast<std::size_t>(l)][static_cast<std::size_t>(m + l)] *
         spherical_form(l, m, direction.x(), direction.y(), direction.z());
}

HarmonicExpansion spherical_fit(std::span<const SphericalSample> samples, int max_l) {
  if (max_l < 0 || max_l > kMaxSphericalDegree) {
    throw std::invalid_argument("spherical fit supports max_l in 0..3");
  }
  const auto keys = harmonic_keys(HarmonicKind::spherical, max_l);
  if (samples.size() < keys.size()) {
    throw std::invalid_argument("spherical fit to degree " + std::to_string(max_l) + " needs " +
                                std::to_string(keys.size()) + " samples, got " +
                                std::to_string(samples.size()));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(keys.size()));
  Eigen::VectorXd b(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    const double norm = s.direction.norm();
    if (norm == 0.0) throw std::invalid_argument("sample " + std::to_string(i) + " has a zero direction");
    const Eigen::Vector3d dir = s.direction / norm;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto& [l, m] = keys[static_cast<std::size_t>(j)];
      a(i, j) = spherical_basis(l, m, dir);
    }
    b(i) = s.r;
  }
  const Eigen::VectorXd x = least_squares(a, b);
  HarmonicExpansion h = HarmonicExpansion::zero(HarmonicKind::spherical, max_l);
  for (std::size_t j = 0; j < keys.size(); ++j) h.coeffs[keys[j]] = x(static_cast<Eigen::Index>(j));
  return h;
}

double spherical_evaluate(const HarmonicExpansion& h, const Eigen::Vector3d& direction) {
  if (h.kind != HarmonicKind::spherical) throw std::invalid_argument("expansion is not spherical");
  const Eigen::Vector3d dir = direction.normalized();
  double r = 0.0;
  for (const auto& [key, c] : h.coeffs) r += c * spherical_basis(key.first, key.second, dir);
  return r;
}

std::vector<double> spherical_invariants(const HarmonicExpansion& h) {
  if (h.kind != HarmonicKind::spherical) throw std::invalid_argument("expansion is not spherical");
  std::vector<double> out(static_cast<std::size_t>(h.max_l) + 1, 0.0);
  for (const auto& [key, c] : h.coeffs) out[static_cast<std::size_t>(key.first)] += c * c;
  return out;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  if (count < 1) throw std::invalid_argument("need at least one direction");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Eigen::Vector3d> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double theta = golden * i;
    out.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
  }
  return out;
}

}  // namespace polyinv

#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace polyinv {

enum class HarmonicKind { cylindrical, spherical };

/// Coefficients a_(l,m) of a harmonic expansion up to degree max_l.
///
/// Cylindrical expansions use m = +1 for the cos(l phi) coefficient a_(+l),
/// m = -1 for sin(l phi) a_(-l), and (0, 0) for a_0. Spherical expansions use
/// m = -l..l for the real spherical harmonics.
struct HarmonicExpansion {
  HarmonicKind kind = HarmonicKind::cylindrical;
  int max_l = 0;
  std::map<std::pair<int, int>, double> coeffs;

  static HarmonicExpansion zero(HarmonicKind kind, int max_l);

  double coefficient(int l, int m) const;
};

/// Basis functions contributed by degree l: 1 then 2 (cylindrical), 2l+1
/// (spherical).
int harmonic_terms(HarmonicKind kind, int l);

/// The (l, m) keys of an expansion, in fit column order.
std::vector<std::pair<int, int>> harmonic_keys(HarmonicKind kind, int max_l);

struct CylindricalSample {
  double phi = 0.0;
  double r = 0.0;
};

/// Least squares in the unnormalized basis 1, cos(l phi), sin(l phi).
/// Needs at least 2 max_l + 1 samples.
HarmonicExpansion cylindrical_fit(std::span<const CylindricalSample> samples, int max_l);

double cylindrical_evaluate(const HarmonicExpansion& h, double phi);

/// A_0 = a_0^2, A_l = a_(+l)^2 + a_(-l)^2.
std::vector<double> cylindrical_invariants(const HarmonicExpansion& h);

inline constexpr int kMaxSphericalDegree = 3;

/// Real spherical harmonic f_lm at a unit direction, l <= 3. Each function is
/// the standard Cartesian form scaled to unit L2 norm over the sphere.
double spherical_basis(int l, int m, const Eigen::Vector3d& direction);

struct SphericalSample {
  Eigen::Vector3d direction;
  double r = 0.0;
};

/// Least squares over f_lm for l <= max_l <= 3. Needs (max_l+1)^2 samples.
HarmonicExpansion spherical_fit(std::span<const SphericalSample> samples, int max_l);

double spherical_evaluate(const HarmonicExpansion& h, const Eigen::Vector3d& direction);

/// A_l = sum_m a_lm^2.
std::vector<double> spherical_invariants(const HarmonicExpansion& h);

/// Near-uniform unit vectors on the golden-angle spiral.
std::vector<Eigen::Vector3d> fibonacci_sphere(int count);

}  // namespace polyinv

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polyinv/contraction.hpp"
#include "polyinv/normalization.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

/// One named invariant. `order` is the vertex count of the diagram that
/// produced it; a homogeneous scaling p -> s p multiplies the value by s^order.
struct FeatureEntry {
  std::string name;
  double value = 0.0;
  int order = 1;
};

struct FeatureMeta {
  int dimension = 0;
  int max_degree = 0;
  bool order_normalized = false;
  std::optional<NormalizationRecord> normalization;
};

/// Ordered, uniquely named invariant values.
struct FeatureVector {
  std::vector<FeatureEntry> entries;
  FeatureMeta meta;

  std::size_t size() const noexcept { return entries.size(); }
  Eigen::VectorXd values() const;
  std::optional<double> find(std::string_view name) const;

  void append(const FeatureVector& other);
};

struct CatalogConfig {
  /// Highest m for the Tr([p]^m) family; defaults to the dimension n.
  std::optional<int> max_trace_power;
  bool include_mixed = false;
  /// Powers m for sum_ab p_a ([p]^m)_ab p_b; empty means 0..n-1.
  std::vector<int> mixed_powers;
  /// Up to this many edges of each degree >= 3 two-vertex diagram receive an
  /// inserted [p]^m chain (m >= 1 from mixed_powers). 0 disables.
  int max_insertions = 0;
  /// Additional diagrams, emitted in canonical-form order.
  std::vector<ContractionGraph> extra_graphs;
  /// Replace every value v of a k-vertex diagram by sign(v) |v|^(1/k).
  bool normalize_by_order = false;
};

/// p_0, sum_i p_i^2, Tr([p]^m) for m = 1..max_trace_power, and for each
/// degree 3 <= d <= D the two-vertex d-edge contraction.
FeatureVector base_invariants(const Polynomial& p, std::optional<int> max_trace_power = std::nullopt);

/// sum_ab p_a ([p]^m)_ab p_b for each m, followed by the insertion variants
/// of degree >= 3 diagrams when max_insertions > 0. Requires D >= 2.
FeatureVector mixed_invariants(const Polynomial& p, std::span<const int> powers,
                               int max_insertions = 0);

/// Cross contractions between two polynomials of equal dimension: one
/// two-vertex diagram per degree and the global Frobenius product.
FeatureVector relative_invariants(const Polynomial& p, const Polynomial& q);

/// binomial(n+d-1, d) - n(n-1)/2. Requires n >= 2, d >= 1.
std::int64_t invariant_count_bound(int dimension, int degree);

/// binomial(n+D-1, D) + binomial(n+D-2, D-1) - n(n-1)/2. Requires n >= 2, D >= 2.
std::int64_t spherical_count_bound(int dimension, int max_degree);

/// Full catalog: base, then mixed (if enabled), then extra graphs.
FeatureVector feature_vector(const Polynomial& p, const CatalogConfig& config = {});

/// Weighted Euclidean distance. Throws DimensionError if the two vectors do
/// not share names and meta, or the weight count differs.
double distance(const FeatureVector& f, const FeatureVector& g,
                std::span<const double> weights = {});

/// Elementary symmetric polynomials e_0..e_k from power sums p_1..p_k
/// (Newton's identities). `power_sums[i]` holds p_{i+1}.
std::vector<double> elementary_from_power_sums(std::span<const double> power_sums);

/// Power sum p_{k} of n values, reconstructed from p_1..p_n via Newton's
/// identities (e_j = 0 for j > n).
double power_sum_from_lower(std::span<const double> power_sums, int k);

/// Recovers the n eigenvalues (ascending) whose power sums are p_1..p_n.
std::vector<double> eigenvalues_from_power_sums(std::span<const double> power_sums);

inline constexpr double kDegenerateSpectrumGap = 1e-6;

/// Canonical representative of the rotation+reflection class of a D = 2
/// polynomial, rebuilt from its invariants: p_0 + sum_i |p_i| x_i +
/// sum_i lambda_i x_i^2 with lambda ascending. Needs "const", "trace.m1..n"
/// and "mixed.d1.m0..n-1" (or "lin.norm2" for m = 0). Throws NumericalError
/// for a degenerate spectrum or inconsistent values.
Polynomial reconstruct_degree2(const FeatureVector& features, int dimension);

}  // namespace polyinv

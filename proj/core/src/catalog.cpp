#include "polyinv/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "polyinv/errors.hpp"

namespace polyinv {

Eigen::VectorXd FeatureVector::values() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) out(static_cast<Eigen::Index>(i)) = entries[i].value;
  return out;
}

std::optional<double> FeatureVector::find(std::string_view name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e.value;
  }
  return std::nullopt;
}

void FeatureVector::append(const FeatureVector& other) {
  for (const auto& e : other.entries) {
    if (find(e.name)) throw std::logic_error("duplicate feature name '" + e.name + "'");
    entries.push_back(e);
  }
}

namespace {

FeatureVector empty_vector(const Polynomial& p) {
  FeatureVector fv;
  fv.meta.dimension = p.dimension();
  fv.meta.max_degree = p.max_degree();
  return fv;
}

void add_graph(FeatureVector& fv, std::string name, const ContractionGraph& g, const Polynomial& p) {
  fv.entries.push_back({std::move(name), evaluate_graph(g, p), g.vertex_count()});
}

std::vector<int> resolve_mixed_powers(std::span<const int> powers, int n) {
  std::vector<int> out(powers.begin(), powers.end());
  if (out.empty()) {
    for (int m = 0; m < n; ++m) out.push_back(m);
  }
  for (int m : out) {
    if (m < 0 || m >= n) {
      throw std::invalid_argument("mixed power " + std::to_string(m) + " outside 0.." +
                                  std::to_string(n - 1));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

FeatureVector base_invariants(const Polynomial& p, std::optional<int> max_trace_power) {
  FeatureVector fv = empty_vector(p);
  const int max_degree = p.max_degree();
  fv.entries.push_back({"const", p.part(0).coefficients()[0], 1});
  if (max_degree >= 1) add_graph(fv, "lin.norm2", two_vertex_graph(1), p);
  if (max_degree >= 2) {
    const int traces = max_trace_power.value_or(p.dimension());
    if (traces < 1) throw std::invalid_argument("max_trace_power must be >= 1");
    for (int m = 1; m <= traces; ++m) add_graph(fv, "trace.m" + std::to_string(m), cycle_graph(m), p);
  }
  for (int d = 3; d <= max_degree; ++d) {
    add_graph(fv, "self.d" + std::to_string(d), two_vertex_graph(d), p);
  }
  return fv;
}

FeatureVector mixed_invariants(const Polynomial& p, std::span<const int> powers, int max_insertions) {
  if (p.max_degree() < 2) throw DimensionError("mixed invariants need max degree >= 2");
  const auto ms = resolve_mixed_powers(powers, p.dimension());

  // (insertions, m, degree) fixes the catalog order
  std::vector<std::tuple<int, int, int>> keys;
  for (int m : ms) keys.emplace_back(1, m, 1);
  for (int d = 3; d <= p.max_degree(); ++d) {
    for (int k = 1; k <= std::min(max_insertions, d); ++k) {
      for (int m : ms) {
        if (m >= 1) keys.emplace_back(k, m, d);
      }
    }
  }
  std::sort(keys.begin(), keys.end());

  FeatureVector fv = empty_vector(p);
  for (const auto& [k, m, d] : keys) {
    std::string name = "mixed.d" + std::to_string(d);
    if (d != 1) name += ".k" + std::to_string(k);
    name += ".m" + std::to_string(m);
    add_graph(fv, std::move(name), inserted_graph(d, k, m), p);
  }
  return fv;
}

FeatureVector relative_invariants(const Polynomial& p, const Polynomial& q) {
  if (p.dimension() != q.dimension()) throw DimensionError("relative invariants need equal dimension");
  const int max_degree = std::max(p.max_degree(), q.max_degree());
  PolynomialBindings bindings;
  bindings.emplace("p", p.with_max_degree(max_degree));
  bindings.emplace("q", q.with_max_degree(max_degree));

  FeatureVector fv;
  fv.meta.dimension = p.dimension();
  fv.meta.max_degree = max_degree;
  for (int d = 0; d <= max_degree; ++d) {
    const auto g = two_vertex_graph(d, "p", "q");
    fv.entries.push_back({"cross.d" + std::to_string(d), evaluate_graph(g, bindings), 2});
  }
  fv.entries.push_back({"cross.frobenius", frobenius_dot(bindings.at("p"), bindings.at("q")), 2});
  return fv;
}

std::int64_t invariant_count_bound(int dimension, int degree) {
  if (dimension < 2 || degree < 1) throw std::invalid_argument("invariant_count_bound needs n >= 2, d >= 1");
  const auto n = static_cast<std::int64_t>(dimension);
  return static_cast<std::int64_t>(binomial(dimension + degree - 1, degree)) - n * (n - 1) / 2;
}

std::int64_t spherical_count_bound(int dimension, int max_degree) {
  if (dimension < 2 || max_degree < 2) {
    throw std::invalid_argument("spherical_count_bound needs n >= 2, D >= 2");
  }
  const auto n = static_cast<std::int64_t>(dimension);
  return static_cast<std::int64_t>(binomial(dimension + max_degree - 1, max_degree)) +
         static_cast<std::int64_t>(binomial(dimension + max_degree - 2, max_degree - 1)) -
         n * (n - 1) / 2;
}

FeatureVector feature_vector(const Polynomial& p, const CatalogConfig& config) {
  FeatureVector fv = base_invariants(p, config.max_trace_power);
  if (config.include_mixed && p.max_degree() >= 2) {
    fv.append(mixed_invariants(p, config.mixed_powers, config.max_insertions));
  }
  if (!config.extra_graphs.empty()) {
    std::set<CanonicalForm> forms;
    for (const auto& g : config.extra_graphs) forms.insert(canonicalize(g));
    for (const auto& form : forms) {
      const auto g = form.graph();
      fv.entries.push_back({"graph[" + form.to_string() + "]", evaluate_graph(g, p), g.vertex_count()});
    }
  }
  if (config.normalize_by_order) {
    for (auto& e : fv.entries) {
      const double magnitude = std::pow(std::abs(e.value), 1.0 / e.order);
      e.value = std::copysign(magnitude, e.value);
    }
    fv.meta.order_normalized = true;
  }
  return fv;
}

double distance(const FeatureVector& f, const FeatureVector& g, std::span<const double> weights) {
  if (f.meta.dimension != g.meta.dimension || f.meta.max_degree != g.meta.max_degree ||
      f.meta.order_normalized != g.meta.order_normalized) {
    throw DimensionError("feature vectors come from different catalogs (meta differs)");
  }
  if (f.entries.size() != g.entries.size()) {
    throw DimensionError("feature vectors differ in length (" + std::to_string(f.size()) + " vs " +
                         std::to_string(g.size()) + ")");
  }
  if (!weights.empty() && weights.size() != f.entries.size()) {
    throw DimensionError("weight count does not match feature count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    if (f.entries[i].name != g.entries[i].name) {
      throw DimensionError("feature " + std::to_string(i) + " is '" + f.entries[i].name +
                           "' in one vector and '" + g.entries[i].name + "' in the other");
    }
    const double w = weights.empty() ? 1.0 : weights[i];
    if (!(w > 0.0)) throw std::invalid_argument("distance weights must be positive");
    const double diff = f.entries[i].value - g.entries[i].value;
    total += w * diff * diff;
  }
  return std::sqrt(total);
}

}  // namespace polyinv

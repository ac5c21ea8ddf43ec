#include "polyinv/json_io.hpp"

#include <cmath>
#include <string>

#include "polyinv/errors.hpp"

namespace polyinv {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected a JSON object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("key '") + key + "': " + e.what());
  }
}

const char* scale_mode_name(ScaleMode mode) {
  return mode == ScaleMode::unit_mean_distance ? "unit-mean-distance" : "none";
}

}  // namespace

json polynomial_to_json(const Polynomial& p) {
  json parts = json::array();
  for (const auto& part : p.parts()) {
    json coeffs = json::array();
    const auto exponents = enumerate_exponents(p.dimension(), part.degree());
    for (std::size_t k = 0; k < exponents.size(); ++k) {
      const double v = part.coefficients()[k];
      if (v == 0.0) continue;
      const auto powers = exponents[k].powers();
      coeffs.push_back({{"exponent", std::vector<int>(powers.begin(), powers.end())}, {"value", v}});
    }
    parts.push_back({{"degree", part.degree()}, {"coeffs", std::move(coeffs)}});
  }
  return {{"n", p.dimension()}, {"D", p.max_degree()}, {"parts", std::move(parts)}};
}

Polynomial polynomial_from_json(const json& j) {
  const int n = get_as<int>(j, "n");
  const int max_degree = get_as<int>(j, "D");
  if (n < 1) throw ParseError("polynomial dimension n must be >= 1");
  if (max_degree < 0) throw ParseError("polynomial degree D must be >= 0");
  Polynomial p(n, max_degree);
  const json& parts = field(j, "parts");
  if (!parts.is_array()) throw ParseError("'parts' must be an array");
  for (const auto& part : parts) {
    const int degree = get_as<int>(part, "degree");
    if (degree < 0 || degree > max_degree) {
      throw ParseError("part degree " + std::to_string(degree) + " outside 0.." + std::to_string(max_degree));
    }
    const json& coeffs = field(part, "coeffs");
    if (!coeffs.is_array()) throw ParseError("'coeffs' must be an array");
    for (const auto& c : coeffs) {
      const auto powers = get_as<std::vector<int>>(c, "exponent");
      const double value = get_as<double>(c, "value");
      if (static_cast<int>(powers.size()) != n) {
        throw ParseError("exponent has " + std::to_string(powers.size()) + " entries, expected " + std::to_string(n));
      }
      Exponent e = [&] {
        try {
          return Exponent(powers);
        } catch (const std::invalid_argument& err) {
          throw ParseError(err.what());
        }
      }();
      if (e.degree() != degree) {
        throw ParseError("exponent of degree " + std::to_string(e.degree()) + " listed under degree " +
                         std::to_string(degree));
      }
      p.set_coefficient(e, value);
    }
  }
  return p;
}

json normalization_to_json(const NormalizationRecord& record) {
  const Eigen::VectorXd& c = record.centroid;
  return {{"centroid", std::vector<double>(c.data(), c.data() + c.size())},
          {"scale", record.scale},
          {"mode", scale_mode_name(record.mode)}};
}

NormalizationRecord normalization_from_json(const json& j) {
  NormalizationRecord record;
  const auto centroid = get_as<std::vector<double>>(j, "centroid");
  record.centroid = Eigen::Map<const Eigen::VectorXd>(centroid.data(), static_cast<Eigen::Index>(centroid.size()));
  record.scale = get_as<double>(j, "scale");
  const auto mode = get_as<std::string>(j, "mode");
  if (mode == "none") {
    record.mode = ScaleMode::none;
  } else if (mode == "unit-mean-distance") {
    record.mode = ScaleMode::unit_mean_distance;
  } else {
    throw ParseError("unknown normalization mode '" + mode + "'");
  }
  if (!(record.scale > 0.0)) throw ParseError("normalization scale must be positive");
  return record;
}

json features_to_json(const FeatureVector& f) {
  json meta = {{"n", f.meta.dimension}, {"D", f.meta.max_degree}, {"order_normalized", f.meta.order_normalized}};
  meta["normalization"] = f.meta.normalization ? normalization_to_json(*f.meta.normalization) : json(nullptr);
  json features = json::array();
  for (const auto& e : f.entries) features.push_back({{"name", e.name}, {"value", e.value}, {"order", e.order}});
  return {{"meta", std::move(meta)}, {"features", std::move(features)}};
}

FeatureVector features_from_json(const json& j) {
  FeatureVector f;
  const json& meta = field(j, "meta");
  f.meta.dimension = get_as<int>(meta, "n");
  f.meta.max_degree = get_as<int>(meta, "D");
  if (meta.contains("order_normalized")) f.meta.order_normalized = get_as<bool>(meta, "order_normalized");
  if (meta.contains("normalization") && !meta["normalization"].is_null()) {
    f.meta.normalization = normalization_from_json(meta["normalization"]);
  }
  const json& features = field(j, "features");
  if (!features.is_array()) throw ParseError("'features' must be an array");
  for (const auto& e : features) {
    FeatureEntry entry;
    entry.name = get_as<std::string>(e, "name");
    entry.value = get_as<double>(e, "value");
    entry.order = e.contains("order") ? get_as<int>(e, "order") : 1;
    if (f.find(entry.name)) throw ParseError("duplicate feature '" + entry.name + "'");
    f.entries.push_back(std::move(entry));
  }
  return f;
}

json diagnostics_to_json(const FitDiagnostics& d) {
  // infinity has no JSON representation
  const json condition = std::isfinite(d.condition) ? json(d.condition) : json(nullptr);
  return {{"rank", d.rank},   {"residual", d.residual}, {"condition", condition},
          {"ridge", d.ridge}, {"samples", d.samples},   {"terms", d.terms}};
}

json harmonics_to_json(const HarmonicExpansion& h) {
  const bool cylindrical = h.kind == HarmonicKind::cylindrical;
  json coeffs = json::array();
  for (const auto& key : harmonic_keys(h.kind, h.max_l)) {
    coeffs.push_back({{"l", key.first}, {"m", key.second}, {"value", h.coefficient(key.first, key.second)}});
  }
  const auto invariants = cylindrical ? cylindrical_invariants(h) : spherical_invariants(h);
  json inv = json::array();
  for (std::size_t l = 0; l < invariants.size(); ++l) {
    inv.push_back({{"name", "A" + std::to_string(l)}, {"value", invariants[l]}});
  }
  return {{"meta", {{"kind", cylindrical ? "cylindrical" : "spherical"}, {"max_l", h.max_l}}},
          {"coefficients", std::move(coeffs)},
          {"invariants", std::move(inv)}};
}

HarmonicExpansion harmonics_from_json(const json& j) {
  const json& meta = field(j, "meta");
  const auto kind = get_as<std::string>(meta, "kind");
  HarmonicKind k;
  if (kind == "cylindrical") {
    k = HarmonicKind::cylindrical;
  } else if (kind == "spherical") {
    k = HarmonicKind::spherical;
  } else {
    throw ParseError("unknown harmonic kind '" + kind + "'");
  }
  const int max_l = get_as<int>(meta, "max_l");
  if (max_l < 0) throw ParseError("max_l must be >= 0");
  HarmonicExpansion h = HarmonicExpansion::zero(k, max_l);
  for (const auto& c : field(j, "coefficients")) {
    const std::pair<int, int> key{get_as<int>(c, "l"), get_as<int>(c, "m")};
    if (!h.coeffs.contains(key)) {
      throw ParseError("coefficient (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                       ") does not belong to this expansion");
    }
    h.coeffs[key] = get_as<double>(c, "value");
  }
  return h;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const json& rows = j.is_object() ? field(j, "matrix") : j;
  if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ParseError("matrix row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) throw ParseError("matrix entries must be numbers");
      m(i, k) = v.get<double>();
    }
  }
  return m;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace polyinv

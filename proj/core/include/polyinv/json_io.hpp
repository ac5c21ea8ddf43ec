#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "polyinv/catalog.hpp"
#include "polyinv/fitting.hpp"
#include "polyinv/harmonics.hpp"
#include "polyinv/normalization.hpp"
#include "polyinv/polynomial.hpp"

namespace polyinv {

// JSON documents. Readers ignore unknown keys and throw ParseError on
// schema violations. Doubles are written in shortest round-trip form.

/// {"n", "D", "parts": [{"degree", "coeffs": [{"exponent": [...], "value"}]}]}
/// with exponents in graded-lex order and zero coefficients omitted.
nlohmann::json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

nlohmann::json normalization_to_json(const NormalizationRecord& record);
NormalizationRecord normalization_from_json(const nlohmann::json& j);

/// {"meta": {"n", "D", "order_normalized", "normalization"},
///  "features": [{"name", "value", "order"}]}
nlohmann::json features_to_json(const FeatureVector& f);
FeatureVector features_from_json(const nlohmann::json& j);

/// {"rank", "residual", "condition"} plus ridge and sizes.
nlohmann::json diagnostics_to_json(const FitDiagnostics& d);

/// {"meta": {"kind", "max_l"}, "coefficients": [{"l", "m", "value"}],
///  "invariants": [{"name": "A<l>", "value"}]}
nlohmann::json harmonics_to_json(const HarmonicExpansion& h);
HarmonicExpansion harmonics_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

/// Parses text, converting nlohmann parse errors into ParseError.
nlohmann::json parse_json(const std::string& text);

}  // namespace polyinv

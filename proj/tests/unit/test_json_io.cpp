#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/json_io.hpp"

using namespace polyinv;

TEST_CASE("polynomial JSON round trips exactly") {
  std::mt19937_64 rng(1);
  const auto p = oracle::random_polynomial(3, 3, rng);
  const auto j = parse_json(polynomial_to_json(p).dump());
  CHECK(polynomial_from_json(j) == p);
}

TEST_CASE("polynomial JSON layout") {
  Polynomial p(2, 2);
  p.set_coefficient(Exponent{1, 1}, 0.5);
  const auto j = polynomial_to_json(p);
  CHECK(j["n"] == 2);
  CHECK(j["D"] == 2);
  CHECK(j["parts"].size() == 3);
  CHECK(j["parts"][2]["coeffs"][0]["exponent"] == nlohmann::json::array({1, 1}));
  CHECK(j["parts"][0]["coeffs"].empty());
}

TEST_CASE("malformed polynomial documents") {
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(polynomial_from_json(parse_json(R"({"n":2})")), ParseError);
  CHECK_THROWS_AS(polynomial_from_json(parse_json(R"({"n":2,"D":1,"parts":[{"degree":1,"coeffs":[{"exponent":[1,1],"value":1}]}]})")), ParseError);
  CHECK_THROWS_AS(polynomial_from_json(parse_json(R"({"n":2,"D":1,"parts":[{"degree":1,"coeffs":[{"exponent":[1],"value":1}]}]})")), ParseError);
  CHECK_THROWS_AS(polynomial_from_json(parse_json(R"({"n":2,"D":1,"parts":[{"degree":3,"coeffs":[]}]})")), ParseError);
}

TEST_CASE("feature JSON round trip keeps meta") {
  std::mt19937_64 rng(2);
  auto f = feature_vector(oracle::random_polynomial(2, 3, rng), {.include_mixed = true});
  f.meta.normalization = NormalizationRecord{Eigen::Vector2d(1.0, -2.0), 0.5, ScaleMode::unit_mean_distance};
  const auto g = features_from_json(parse_json(features_to_json(f).dump()));
  REQUIRE(g.size() == f.size());
  CHECK(distance(f, g) == 0.0);
  CHECK(g.meta.normalization->scale == 0.5);
  CHECK(g.meta.normalization->mode == ScaleMode::unit_mean_distance);
  CHECK(g.entries[3].order == f.entries[3].order);
}

TEST_CASE("harmonics and matrix JSON") {
  auto h = HarmonicExpansion::zero(HarmonicKind::spherical, 2);
  h.coeffs[{2, -1}] = 0.25;
  const auto back = harmonics_from_json(parse_json(harmonics_to_json(h).dump()));
  CHECK(back.coefficient(2, -1) == 0.25);
  CHECK(back.kind == HarmonicKind::spherical);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Random(3, 3);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[1,2],[3]]")), ParseError);
}

TEST_CASE("diagnostics serialize infinite condition as null") {
  FitDiagnostics d;
  d.condition = INFINITY;
  CHECK(diagnostics_to_json(d)["condition"].is_null());
}

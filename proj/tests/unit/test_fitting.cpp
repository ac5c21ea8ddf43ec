#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyinv/catalog.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/fitting.hpp"
#include "polyinv/orthogonal.hpp"

using namespace polyinv;

namespace {

Eigen::MatrixXd random_points(int count, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x(count, n);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = u(rng);
  return x;
}

Eigen::VectorXd sample(const Polynomial& p, const Eigen::MatrixXd& x) {
  Eigen::VectorXd y(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) y(i) = oracle::evaluate(p, x.row(i).transpose());
  return y;
}

}  // namespace

TEST_CASE("point cloud validation") {
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd(0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd::Zero(3, 2), Eigen::VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(Eigen::MatrixXd::Zero(3, 2), {}, Eigen::VectorXd::Zero(3)), std::invalid_argument);
  const PointCloud c(Eigen::MatrixXd::Zero(3, 2));
  CHECK(c.values() == Eigen::VectorXd::Ones(3));
  CHECK(c.weights() == Eigen::VectorXd::Ones(3));
}

TEST_CASE("normalization centers and rescales with weights") {
  std::mt19937_64 rng(1);
  Eigen::VectorXd w = (Eigen::VectorXd::Random(50).array() + 2.0).matrix();
  const PointCloud c(random_points(50, 3, rng) * 4.0 + Eigen::MatrixXd::Constant(50, 3, 7.0), {}, w);
  const auto [out, record] = normalize(c, ScaleMode::unit_mean_distance);
  const double total = w.sum();
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(3);
  double mean_dist = 0.0;
  for (int i = 0; i < 50; ++i) {
    centroid += w(i) * out.points().row(i).transpose();
    mean_dist += w(i) * out.points().row(i).norm();
  }
  CHECK((centroid / total).norm() <= 1e-12);
  CHECK(std::abs(mean_dist / total - 1.0) <= 1e-12);
  CHECK(record.scale > 0.0);
  CHECK(record.mode == ScaleMode::unit_mean_distance);
}

TEST_CASE("a single point centers but cannot be scaled") {
  Eigen::MatrixXd x(1, 2);
  x << 5.0, 5.0;
  const auto [out, record] = normalize(PointCloud(x), ScaleMode::none);
  CHECK(out.points().norm() == 0.0);
  CHECK(record.centroid(0) == 5.0);
  CHECK_THROWS_AS(normalize(PointCloud(x), ScaleMode::unit_mean_distance), NumericalError);
}

TEST_CASE("design matrix columns follow catalog order") {
  Eigen::MatrixXd x(1, 2);
  x << 2.0, 3.0;
  const auto sys = design_matrix(PointCloud(x, Eigen::VectorXd::Constant(1, 5.0), Eigen::VectorXd::Constant(1, 4.0)),
                                 FitConfig{.max_degree = 2});
  REQUIRE(sys.matrix.cols() == 6);
  const std::vector<double> expected{1, 2, 3, 4, 6, 9};
  for (int k = 0; k < 6; ++k) CHECK(sys.matrix(0, k) == doctest::Approx(2.0 * expected[static_cast<std::size_t>(k)]));
  CHECK(sys.target(0) == doctest::Approx(10.0));
  const auto radial = design_matrix(PointCloud(x), FitConfig{.max_degree = 1, .radial = RadialWeight::gaussian});
  CHECK(radial.matrix(0, 1) == doctest::Approx(2.0 * std::exp(-13.0)));
}

TEST_CASE("unregularized fit recovers representable polynomials") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n) {
    for (int max_degree = 1; max_degree <= 4; ++max_degree) {
      const auto p = oracle::random_polynomial(n, max_degree, rng);
      const int count = 3 * static_cast<int>(p.term_count());
      const auto x = random_points(count, n, rng);
      const auto r = fit(PointCloud(x, sample(p, x)), FitConfig{.max_degree = max_degree, .ridge = 0.0});
      CHECK(r.diagnostics.rank == static_cast<int>(p.term_count()));
      CHECK((vectorize(r.polynomial) - vectorize(p)).norm() <= 1e-8 * vectorize(p).norm());
    }
  }
}

TEST_CASE("residual does not increase with degree") {
  std::mt19937_64 rng(3);
  const auto x = random_points(80, 2, rng);
  Eigen::VectorXd y(80);
  for (int i = 0; i < 80; ++i) y(i) = std::sin(3.0 * x(i, 0)) * std::cos(2.0 * x(i, 1));
  double previous = INFINITY;
  for (int d = 0; d <= 6; ++d) {
    const double res = fit(PointCloud(x, y), FitConfig{.max_degree = d, .ridge = 0.0}).diagnostics.residual;
    CHECK(res <= previous * (1.0 + 1e-12));
    previous = res;
  }
}

TEST_CASE("ridge shrinks and is reported") {
  std::mt19937_64 rng(4);
  const auto p = oracle::random_polynomial(2, 2, rng);
  const auto x = random_points(30, 2, rng);
  const auto free = fit(PointCloud(x, sample(p, x)), FitConfig{.max_degree = 2, .ridge = 0.0});
  const auto damped = fit(PointCloud(x, sample(p, x)), FitConfig{.max_degree = 2, .ridge = 10.0});
  CHECK(damped.diagnostics.ridge == 10.0);
  CHECK(vectorize(damped.polynomial).norm() < vectorize(free.polynomial).norm());
  const auto dflt = fit(PointCloud(x, sample(p, x)), FitConfig{.max_degree = 2});
  CHECK(dflt.diagnostics.ridge > 0.0);
  CHECK_THROWS_AS(fit(PointCloud(x), FitConfig{.max_degree = -1}), std::invalid_argument);
  CHECK_THROWS_AS(fit(PointCloud(x), FitConfig{.max_degree = 2, .ridge = -1.0}), std::invalid_argument);
}

TEST_CASE("fitting rotated samples gives invariant features") {
  std::mt19937_64 rng(5);
  const auto x = random_points(60, 3, rng);
  Eigen::VectorXd y(60);
  for (int i = 0; i < 60; ++i) y(i) = std::exp(-x.row(i).squaredNorm()) + x(i, 0) * x(i, 1);
  const PointCloud cloud(x, y);
  const auto o = random_orthogonal_with_determinant(3, -1, rng);
  const FitConfig cfg{.max_degree = 3, .ridge = 1e-3};
  const auto a = fit(normalize(cloud, ScaleMode::unit_mean_distance).first, cfg);
  const auto b = fit(normalize(rotate_points(cloud, o), ScaleMode::unit_mean_distance).first, cfg);
  const CatalogConfig cat{.include_mixed = true};
  CHECK(distance(feature_vector(a.polynomial, cat), feature_vector(b.polynomial, cat)) < 1e-8);
}

TEST_CASE("spherical fit of a circle is a constant envelope") {
  Eigen::MatrixXd x(40, 2);
  for (int i = 0; i < 40; ++i) {
    const double t = 2.0 * M_PI * i / 40.0;
    x(i, 0) = 3.0 + 2.0 * std::cos(t);
    x(i, 1) = -1.0 + 2.0 * std::sin(t);
  }
  const auto [cloud, record] = normalize(PointCloud(x), ScaleMode::unit_mean_distance);
  const auto r = fit_spherical(cloud, 2);
  CHECK(r.diagnostics.residual < 1e-8);
  CHECK(record.scale == doctest::Approx(2.0));
  // on the unit circle the envelope evaluates to the radius 1
  for (double t : {0.1, 1.3, 2.9}) {
    Eigen::VectorXd u(2);
    u << std::cos(t), std::sin(t);
    CHECK(evaluate(r.polynomial, u) == doctest::Approx(1.0).epsilon(1e-7));
  }
  Eigen::MatrixXd origin = Eigen::MatrixXd::Zero(3, 2);
  origin(1, 0) = 1.0;
  CHECK_THROWS_AS(fit_spherical(PointCloud(origin), 2), std::invalid_argument);
}

TEST_CASE("fit basis") {
  CHECK(fit_basis(2, FitConfig{.max_degree = 2}).size() == 6);
  CHECK(fit_basis(3, FitConfig{.max_degree = 3, .spherical = true}).size() == 16);
}

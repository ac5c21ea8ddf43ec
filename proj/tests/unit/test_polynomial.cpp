#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/polynomial.hpp"
#include "polyinv/symmetric_tensor.hpp"

using namespace polyinv;

namespace {

Eigen::VectorXd random_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = u(rng);
  return x;
}

}  // namespace

TEST_CASE("parts are complete and zero-initialized") {
  Polynomial p(3, 2);
  CHECK(p.parts().size() == 3);
  CHECK(p.part(2).size() == 6);
  CHECK(p.term_count() == 10);
  CHECK(p.is_zero());
  p.set_coefficient(Exponent{0, 1, 1}, 4.0);
  CHECK(p.coefficient(Exponent{0, 1, 1}) == 4.0);
  CHECK(p.part(2).symmetric_entry(std::vector<int>{1, 2}) == 2.0);
  CHECK(p.part(2).symmetric_entry(std::vector<int>{2, 1}) == 2.0);
  CHECK_THROWS(p.set_coefficient(Exponent{1, 1}, 1.0));
  CHECK_THROWS(p.set_coefficient(Exponent{3, 0, 0}, 1.0));
}

TEST_CASE("evaluate matches the monomial-sum oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    const auto p = oracle::random_polynomial(n, 1 + trial % 5, rng);
    const auto x = random_point(n, rng);
    CHECK(evaluate(p, x) == doctest::Approx(oracle::evaluate(p, x)).epsilon(1e-12));
  }
  Polynomial p(2, 1);
  CHECK_THROWS_AS(evaluate(p, Eigen::VectorXd::Zero(3)), DimensionError);
}

TEST_CASE("apply_rotation satisfies p'(x) = p(O x) pointwise") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const int max_degree = 1 + trial % 4;
    const auto p = oracle::random_polynomial(n, max_degree, rng);
    const OrthogonalMatrix o(oracle::gram_schmidt_orthogonal(n, rng));
    const auto q = apply_rotation(p, o);
    for (int k = 0; k < 5; ++k) {
      const auto x = random_point(n, rng);
      const Eigen::VectorXd ox = o.matrix() * x;
      CHECK(oracle::evaluate(q, x) == doctest::Approx(oracle::evaluate(p, ox)).epsilon(1e-10));
    }
  }
}

TEST_CASE("apply_rotation composes as p -> p(O1 O2 x)") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const auto p = oracle::random_polynomial(n, 3, rng);
    const auto o1 = random_orthogonal(n, rng);
    const auto o2 = random_orthogonal(n, rng);
    const auto twice = apply_rotation(apply_rotation(p, o1), o2);
    const auto once = apply_rotation(p, o1 * o2);
    CHECK((vectorize(twice) - vectorize(once)).norm() <= 1e-12 * (1.0 + vectorize(p).norm()));
  }
}

TEST_CASE("identity rotation leaves coefficients unchanged") {
  std::mt19937_64 rng(14);
  const auto p = oracle::random_polynomial(3, 4, rng);
  const auto q = apply_rotation(p, OrthogonalMatrix::identity(3));
  CHECK((vectorize(p) - vectorize(q)).norm() <= 1e-14 * vectorize(p).norm());
  CHECK_THROWS_AS(apply_rotation(p, OrthogonalMatrix::identity(2)), DimensionError);
}

TEST_CASE("Frobenius product is rotation invariant") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    const auto p = oracle::random_polynomial(n, 3, rng);
    const auto q = oracle::random_polynomial(n, 3, rng);
    const auto o = random_orthogonal(n, rng);
    const double before = frobenius_dot(p, q);
    const double after = frobenius_dot(apply_rotation(p, o), apply_rotation(q, o));
    CHECK(after == doctest::Approx(before).epsilon(1e-10).scale(vectorize(p).norm() * vectorize(q).norm()));
  }
  CHECK_THROWS_AS(frobenius_dot(Polynomial(2, 2), Polynomial(2, 3)), DimensionError);
}

TEST_CASE("vectorize equals the dense-tensor Frobenius norm") {
  std::mt19937_64 rng(16);
  const auto p = oracle::random_polynomial(3, 3, rng);
  double dense = 0.0;
  for (int d = 0; d <= 3; ++d) {
    const auto t = expand_symmetric(p.part(d));
    for (double v : t.data()) dense += v * v;
  }
  CHECK(vectorize(p).squaredNorm() == doctest::Approx(dense).epsilon(1e-13));
}

TEST_CASE("expand and collect are inverse on symmetric parts") {
  std::mt19937_64 rng(17);
  const auto p = oracle::random_polynomial(3, 4, rng);
  const auto& part = p.part(4);
  const auto back = collect_symmetric(expand_symmetric(part));
  for (std::size_t k = 0; k < part.size(); ++k) {
    CHECK(back.coefficients()[k] == doctest::Approx(part.coefficients()[k]).epsilon(1e-14));
  }
}

TEST_CASE("quadratic matrix and linear vector") {
  Eigen::MatrixXd q(2, 2);
  q << 1.0, 0.5, 0.5, -2.0;
  auto p = oracle::quadratic_from_matrix(q);
  p.set_coefficient(Exponent{1, 0}, 3.0);
  p.set_coefficient(Exponent{0, 1}, -4.0);
  CHECK((quadratic_matrix(p) - q).norm() == 0.0);
  CHECK(linear_vector(p)(0) == 3.0);
  CHECK(linear_vector(p)(1) == -4.0);
  CHECK(quadratic_matrix(Polynomial(2, 1)).isZero());
}

TEST_CASE("with_max_degree pads and truncates") {
  std::mt19937_64 rng(18);
  const auto p = oracle::random_polynomial(2, 2, rng);
  const auto wide = p.with_max_degree(4);
  CHECK(wide.max_degree() == 4);
  CHECK(wide.part(4).is_zero());
  CHECK(wide.with_max_degree(2) == p);
}

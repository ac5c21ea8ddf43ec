#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/exponent.hpp"

using namespace polyinv;

TEST_CASE("degree-2 exponents in two variables follow graded-lex order") {
  const auto e = enumerate_exponents(2, 2);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == Exponent{2, 0});
  CHECK(e[1] == Exponent{1, 1});
  CHECK(e[2] == Exponent{0, 2});
}

TEST_CASE("enumeration sizes match the stars-and-bars count") {
  for (int n = 1; n <= 5; ++n) {
    for (int d = 0; d <= 6; ++d) {
      const auto e = enumerate_exponents(n, d);
      CHECK(e.size() == static_cast<std::size_t>(oracle::multinomial({d, n - 1})));
      CHECK(e.size() == monomial_count(n, d));
    }
  }
}

TEST_CASE("enumeration is strictly increasing and ranks match positions") {
  for (int n = 1; n <= 4; ++n) {
    const auto all = enumerate_exponents_up_to(n, 5);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(graded_lex_less(all[i - 1], all[i]));
    for (int d = 0; d <= 5; ++d) {
      const auto e = enumerate_exponents(n, d);
      for (std::size_t k = 0; k < e.size(); ++k) CHECK(exponent_rank(e[k]) == k);
    }
  }
}

TEST_CASE("multinomial weight equals the factorial formula") {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 7; ++d) {
      for (const auto& e : enumerate_exponents(n, d)) {
        const std::vector<int> powers(e.powers().begin(), e.powers().end());
        CHECK(static_cast<double>(multinomial_weight(e)) == oracle::multinomial(powers));
      }
    }
  }
  CHECK(multinomial_weight(Exponent{1, 1}) == 2);
  CHECK(multinomial_weight(Exponent{2, 1, 0}) == 3);
}

TEST_CASE("weights over one degree sum to n^d") {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 6; ++d) {
      std::uint64_t sum = 0;
      for (const auto& e : enumerate_exponents(n, d)) sum += multinomial_weight(e);
      std::uint64_t expected = 1;
      for (int i = 0; i < d; ++i) expected *= static_cast<std::uint64_t>(n);
      CHECK(sum == expected);
    }
  }
}

TEST_CASE("binomial edge cases and overflow") {
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(67, 33) == 14226520737620288370ULL);
  CHECK_THROWS_AS(binomial(70, 35), OverflowError);
}

TEST_CASE("from_indices and sorted_indices are inverse") {
  const std::vector<int> idx{2, 0, 2, 1};
  const Exponent e = Exponent::from_indices(idx, 3);
  CHECK(e == Exponent{1, 1, 2});
  CHECK(e.sorted_indices() == std::vector<int>{0, 1, 2, 2});
  CHECK_THROWS_AS(Exponent::from_indices(idx, 2), std::out_of_range);
  CHECK_THROWS_AS(Exponent({1, -1}), std::invalid_argument);
}

TEST_CASE("monomial evaluation") {
  const std::vector<double> x{2.0, -3.0, 0.5};
  CHECK(monomial(Exponent{2, 1, 3}, x) == doctest::Approx(4.0 * -3.0 * 0.125));
  CHECK(monomial(Exponent{0, 0, 0}, x) == 1.0);
  CHECK_THROWS_AS(monomial(Exponent{1, 1}, x), DimensionError);
}

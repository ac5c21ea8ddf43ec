#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace polyinv {

/// Multi-index of per-coordinate powers, x^l = x_1^l_1 * ... * x_n^l_n.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<int> powers);
  Exponent(std::initializer_list<int> powers)
      : Exponent(std::vector<int>(powers)) {}

  /// Exponent counting occurrences of each coordinate in an index sequence.
  static Exponent from_indices(std::span<const int> indices, int dimension);

  int dimension() const noexcept { return static_cast<int>(powers_.size()); }
  int degree() const noexcept { return degree_; }
  std::span<const int> powers() const noexcept { return powers_; }
  int operator[](std::size_t i) const { return powers_[i]; }

  /// The sorted index sequence with this exponent, e.g. (2,0,1) -> {0,0,2}.
  std::vector<int> sorted_indices() const;

  bool operator==(const Exponent& other) const = default;

 private:
  std::vector<int> powers_;
  int degree_ = 0;
};

/// Graded-lexicographic comparison: lower degree first, then larger leading
/// powers first. This is the canonical coefficient order everywhere.
bool graded_lex_less(const Exponent& a, const Exponent& b);

/// All exponents with |l| = d in graded-lexicographic order.
std::vector<Exponent> enumerate_exponents(int dimension, int degree);

/// All exponents with |l| <= max_degree, degree-ascending.
std::vector<Exponent> enumerate_exponents_up_to(int dimension, int max_degree);

/// Position of `e` within enumerate_exponents(e.dimension(), e.degree()).
std::size_t exponent_rank(const Exponent& e);

/// Binomial coefficient; throws OverflowError if it does not fit 64 bits.
std::uint64_t binomial(int n, int k);

/// Number of degree-d monomials in n variables, binomial(n+d-1, d).
std::size_t monomial_count(int dimension, int degree);

/// N_l = |l|! / (l_1! ... l_n!), the number of index sequences mapping to l.
/// Throws OverflowError when the value exceeds 64 bits.
std::uint64_t multinomial_weight(const Exponent& e);

/// x^l evaluated at a point.
double monomial(const Exponent& e, std::span<const double> x);

}  // namespace polyinv

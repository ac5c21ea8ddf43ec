#include "polyinv/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polyinv/errors.hpp"

namespace polyinv {

Exponent::Exponent(std::vector<int> powers) : powers_(std::move(powers)) {
  for (int p : powers_) {
    if (p < 0) throw std::invalid_argument("exponent powers must be non-negative");
  }
  degree_ = std::accumulate(powers_.begin(), powers_.end(), 0);
}

Exponent Exponent::from_indices(std::span<const int> indices, int dimension) {
  std::vector<int> powers(static_cast<std::size_t>(dimension), 0);
  for (int i : indices) {
    if (i < 0 || i >= dimension) throw std::out_of_range("index outside dimension");
    ++powers[static_cast<std::size_t>(i)];
  }
  return Exponent(std::move(powers));
}

std::vector<int> Exponent::sorted_indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(degree_));
  for (int i = 0; i < dimension(); ++i) {
    out.insert(out.end(), static_cast<std::size_t>(powers_[static_cast<std::size_t>(i)]), i);
  }
  return out;
}

bool graded_lex_less(const Exponent& a, const Exponent& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // larger leading power comes first: (2,0) < (1,1) < (0,2)
  return std::lexicographical_compare(b.powers().begin(), b.powers().end(),
                                      a.powers().begin(), a.powers().end());
}

namespace {

void enumerate_rec(std::vector<int>& current, std::size_t pos, int remaining,
                   std::vector<Exponent>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    current[pos] = v;
    enumerate_rec(current, pos + 1, remaining - v, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<Exponent> enumerate_exponents(int dimension, int degree) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  std::vector<Exponent> out;
  out.reserve(monomial_count(dimension, degree));
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  enumerate_rec(current, 0, degree, out);
  return out;
}

std::vector<Exponent> enumerate_exponents_up_to(int dimension, int max_degree) {
  std::vector<Exponent> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto part = enumerate_exponents(dimension, d);
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

std::size_t exponent_rank(const Exponent& e) {
  const int n = e.dimension();
  int remaining = e.degree();
  std::size_t rank = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const int p = e[static_cast<std::size_t>(i)];
    // every choice v > p at this position precedes e
    for (int v = remaining; v > p; --v) {
      rank += monomial_count(n - i - 1, remaining - v);
    }
    remaining -= p;
  }
  return rank;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // C(n, i) = C(n, i-1) * (n-k+i) / i; dividing out gcd(result, i) first
  // keeps the product exact in 64 bits
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const auto den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i) / (den / g);
    if (__builtin_mul_overflow(result / g, factor, &result)) {
      throw OverflowError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") exceeds 64 bits");
    }
  }
  return result;
}

std::size_t monomial_count(int dimension, int degree) {
  if (dimension < 1 || degree < 0) return 0;
  return static_cast<std::size_t>(binomial(dimension + degree - 1, degree));
}

std::uint64_t multinomial_weight(const Exponent& e) {
  // N_l = prod_i C(l_1 + ... + l_i, l_i)
  std::uint64_t result = 1;
  int partial = 0;
  for (int p : e.powers()) {
    partial += p;
    const std::uint64_t factor = binomial(partial, p);
    if (__builtin_mul_overflow(result, factor, &result)) {
      throw OverflowError("multinomial weight of degree " + std::to_string(e.degree()) +
                          " exceeds 64 bits");
    }
  }
  return result;
}

double monomial(const Exponent& e, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(e.dimension())) {
    throw DimensionError("point dimension does not match exponent dimension");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) v *= x[i];
  }
  return v;
}

}  // namespace polyinv

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "polyinv/contraction.hpp"

namespace polyinv {

namespace {

// Fills the upper triangle of an edge-multiplicity matrix row by row so that
// every vertex ends up saturated, emitting each complete multigraph.
class MultigraphBuilder {
 public:
  MultigraphBuilder(std::vector<VertexLabel> vertices, std::set<CanonicalForm>& found)
      : vertices_(std::move(vertices)), found_(found) {
    for (const auto& v : vertices_) remaining_.push_back(v.degree);
  }

  void run() { fill_vertex(0); }

 private:
  void fill_vertex(std::size_t v) {
    if (v == vertices_.size()) {
      emit();
      return;
    }
    for (int loops = remaining_[v] / 2; loops >= 0; --loops) {
      remaining_[v] -= 2 * loops;
      for (int k = 0; k < loops; ++k) edges_.emplace_back(static_cast<int>(v), static_cast<int>(v));
      fill_neighbors(v, v + 1);
      edges_.resize(edges_.size() - static_cast<std::size_t>(loops));
      remaining_[v] += 2 * loops;
    }
  }

  void fill_neighbors(std::size_t v, std::size_t u) {
    if (remaining_[v] == 0) {
      fill_vertex(v + 1);
      return;
    }
    if (u == vertices_.size()) return;
    const int most = std::min(remaining_[v], remaining_[u]);
    for (int m = most; m >= 0; --m) {
      remaining_[v] -= m;
      remaining_[u] -= m;
      for (int k = 0; k < m; ++k) edges_.emplace_back(static_cast<int>(v), static_cast<int>(u));
      fill_neighbors(v, u + 1);
      edges_.resize(edges_.size() - static_cast<std::size_t>(m));
      remaining_[v] += m;
      remaining_[u] += m;
    }
  }

  void emit() {
    ContractionGraph g(vertices_, edges_);
    if (g.is_connected()) found_.insert(canonicalize(g));
  }

  std::vector<VertexLabel> vertices_;
  std::set<CanonicalForm>& found_;
  std::vector<int> remaining_;
  std::vector<Edge> edges_;
};

}  // namespace

std::vector<ContractionGraph> enumerate_graphs(std::span<const VertexLabel> vertices, int max_vertices) {
  if (vertices.empty()) throw std::invalid_argument("graph enumeration needs at least one vertex");
  if (max_vertices < 1 || max_vertices > kMaxCanonicalVertices) {
    throw std::invalid_argument("max_vertices must lie in 1.." + std::to_string(kMaxCanonicalVertices));
  }
  if (static_cast<int>(vertices.size()) > max_vertices) {
    throw std::invalid_argument("vertex multiset has " + std::to_string(vertices.size()) +
                                " vertices, above the limit of " + std::to_string(max_vertices));
  }
  int slots = 0;
  for (const auto& v : vertices) {
    if (v.degree < 1) throw std::invalid_argument("enumerated vertices need degree >= 1");
    slots += v.degree;
  }
  if (slots % 2 != 0) {
    throw std::invalid_argument("total slot count " + std::to_string(slots) +
                                " is odd; no full contraction exists");
  }
  if (slots > kMaxEnumerationSlots) {
    throw std::invalid_argument("total slot count " + std::to_string(slots) + " exceeds " +
                                std::to_string(kMaxEnumerationSlots));
  }

  std::vector<VertexLabel> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  std::set<CanonicalForm> found;
  MultigraphBuilder(std::move(sorted), found).run();

  std::vector<ContractionGraph> out;
  out.reserve(found.size());
  for (const auto& form : found) out.push_back(form.graph());
  return out;
}

}  // namespace polyinv

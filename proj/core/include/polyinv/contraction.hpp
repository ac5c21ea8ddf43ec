#pragma once

#include <compare>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polyinv/polynomial.hpp"

namespace polyinv {

/// Which polynomial a vertex draws from, and the degree of the part it names.
struct VertexLabel {
  int degree = 0;
  std::string polynomial = "p";

  auto operator<=>(const VertexLabel&) const = default;
  bool operator==(const VertexLabel&) const = default;
};

/// Undirected edge between two vertex slots; stored with first <= second.
/// first == second is a self-loop and consumes two slots of that vertex.
using Edge = std::pair<int, int>;

/// Fully contracted tensor diagram. Each vertex is a symmetric coefficient
/// tensor, each edge sums one shared index over 1..n.
class ContractionGraph {
 public:
  ContractionGraph() = default;

  /// Validates that every vertex has exactly `degree` incident edge endpoints
  /// (self-loops counting twice) and that edges reference existing vertices.
  ContractionGraph(std::vector<VertexLabel> vertices, std::vector<Edge> edges);

  std::span<const VertexLabel> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  bool is_connected() const;

  /// Connected components as standalone graphs.
  std::vector<ContractionGraph> components() const;

  bool operator==(const ContractionGraph&) const = default;

 private:
  std::vector<VertexLabel> vertices_;
  std::vector<Edge> edges_;
};

/// Parses `deg:poly,deg:poly,... ; i-j,i-j,...` (vertices 0-indexed in
/// declaration order). The `; edges` tail may be omitted for edgeless graphs.
ContractionGraph parse_graph_spec(std::string_view text);

std::string format_graph_spec(const ContractionGraph& graph);

/// Reads one graph per line; blank lines and `#` comments are skipped.
/// Errors are ParseError carrying the offending line number.
std::vector<ContractionGraph> read_graph_specs(std::istream& in);

/// Permutation-minimal encoding of a labeled multigraph.
struct CanonicalForm {
  std::vector<VertexLabel> vertex_labels;
  std::vector<Edge> edge_code;

  auto operator<=>(const CanonicalForm&) const = default;
  bool operator==(const CanonicalForm&) const = default;

  ContractionGraph graph() const { return ContractionGraph(vertex_labels, edge_code); }
  std::string to_string() const { return format_graph_spec(graph()); }
};

inline constexpr int kMaxCanonicalVertices = 8;
inline constexpr int kMaxEnumerationSlots = 24;
inline constexpr int kMaxEnumerationEdges = 12;

/// Equal for two graphs iff they are isomorphic as labeled multigraphs.
/// Throws std::invalid_argument above kMaxCanonicalVertices vertices.
CanonicalForm canonicalize(const ContractionGraph& graph);

using PolynomialBindings = std::map<std::string, Polynomial, std::less<>>;

/// Sum over all index assignments to edges of the product of symmetric
/// coefficients p_i at each vertex. Evaluated by pairwise tensor contraction,
/// always merging the pair whose result has the fewest open indices.
double evaluate_graph(const ContractionGraph& graph, const PolynomialBindings& polys);

/// Binds every polynomial id in the graph to `p`.
double evaluate_graph(const ContractionGraph& graph, const Polynomial& p);

/// All connected, fully contracted multigraphs on exactly the given vertex
/// multiset, deduplicated up to isomorphism and sorted by canonical form.
std::vector<ContractionGraph> enumerate_graphs(std::span<const VertexLabel> vertices,
                                               int max_vertices = kMaxCanonicalVertices);

/// Tr([p]^m).
double trace_power(const Polynomial& p, int m);

// Builders for the diagram families used by the invariant catalog.

/// m degree-2 vertices joined in a ring; evaluates to Tr([p]^m).
ContractionGraph cycle_graph(int m, const std::string& polynomial = "p");

/// Two degree-d vertices joined by d parallel edges: sum_i a_i b_i.
ContractionGraph two_vertex_graph(int degree, const std::string& first = "p",
                                  const std::string& second = "p");

/// Two degree-d vertices whose first `insertions` parallel edges each carry a
/// chain of `power` degree-2 vertices, i.e. [p]^power inserted in the edge.
ContractionGraph inserted_graph(int degree, int insertions, int power,
                                const std::string& polynomial = "p");

}  // namespace polyinv

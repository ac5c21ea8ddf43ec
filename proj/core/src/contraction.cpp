#include "polyinv/contraction.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "polyinv/errors.hpp"
#include "polyinv/symmetric_tensor.hpp"

namespace polyinv {

// ---------------------------------------------------------------------------
// ContractionGraph

ContractionGraph::ContractionGraph(std::vector<VertexLabel> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const int nv = vertex_count();
  std::vector<int> slots(vertices_.size(), 0);
  for (auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= nv || b >= nv) {
      throw std::invalid_argument("edge " + std::to_string(a) + "-" + std::to_string(b) +
                                  " references a missing vertex");
    }
    if (a > b) std::swap(a, b);
    ++slots[static_cast<std::size_t>(a)];
    ++slots[static_cast<std::size_t>(b)];
  }
  for (int v = 0; v < nv; ++v) {
    const auto& label = vertices_[static_cast<std::size_t>(v)];
    if (label.degree < 0) throw std::invalid_argument("vertex degree must be >= 0");
    if (label.polynomial.empty()) throw std::invalid_argument("vertex polynomial id is empty");
    if (slots[static_cast<std::size_t>(v)] != label.degree) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                  std::to_string(label.degree) + " but " +
                                  std::to_string(slots[static_cast<std::size_t>(v)]) +
                                  " edge endpoints");
    }
  }
}

namespace {

// Union-find component id per vertex.
std::vector<int> component_ids(int vertex_count, std::span<const Edge> edges) {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (const auto& [a, b] : edges) parent[static_cast<std::size_t>(find(a))] = find(b);
  std::vector<int> ids(static_cast<std::size_t>(vertex_count));
  for (int v = 0; v < vertex_count; ++v) ids[static_cast<std::size_t>(v)] = find(v);
  return ids;
}

}  // namespace

bool ContractionGraph::is_connected() const {
  if (vertices_.empty()) return false;
  const auto ids = component_ids(vertex_count(), edges_);
  return std::all_of(ids.begin(), ids.end(), [&](int id) { return id == ids.front(); });
}

std::vector<ContractionGraph> ContractionGraph::components() const {
  const auto ids = component_ids(vertex_count(), edges_);
  std::vector<int> roots;
  for (int id : ids) {
    if (std::find(roots.begin(), roots.end(), id) == roots.end()) roots.push_back(id);
  }
  std::vector<ContractionGraph> out;
  for (int root : roots) {
    std::vector<int> remap(vertices_.size(), -1);
    std::vector<VertexLabel> verts;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      if (ids[v] != root) continue;
      remap[v] = static_cast<int>(verts.size());
      verts.push_back(vertices_[v]);
    }
    std::vector<Edge> es;
    for (const auto& [a, b] : edges_) {
      if (ids[static_cast<std::size_t>(a)] == root) {
        es.emplace_back(remap[static_cast<std::size_t>(a)], remap[static_cast<std::size_t>(b)]);
      }
    }
    out.emplace_back(std::move(verts), std::move(es));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

ContractionGraph parse_graph_spec(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty graph spec");
  const auto semi = text.find(';');
  const auto vertex_text = trim(text.substr(0, semi));
  const auto edge_text = semi == std::string_view::npos ? std::string_view{} : trim(text.substr(semi + 1));

  std::vector<VertexLabel> vertices;
  for (auto item : split(vertex_text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("vertex '" + std::string(item) + "' is not of the form deg:poly");
    }
    VertexLabel label;
    label.degree = parse_int(trim(item.substr(0, colon)), "vertex degree");
    label.polynomial = std::string(trim(item.substr(colon + 1)));
    if (label.polynomial.empty()) throw ParseError("vertex '" + std::string(item) + "' has no polynomial id");
    vertices.push_back(std::move(label));
  }

  std::vector<Edge> edges;
  if (!edge_text.empty()) {
    for (auto item : split(edge_text, ',')) {
      const auto dash = item.find('-');
      if (dash == std::string_view::npos) {
        throw ParseError("edge '" + std::string(item) + "' is not of the form i-j");
      }
      edges.emplace_back(parse_int(trim(item.substr(0, dash)), "edge endpoint"),
                         parse_int(trim(item.substr(dash + 1)), "edge endpoint"));
    }
  }
  try {
    return ContractionGraph(std::move(vertices), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string format_graph_spec(const ContractionGraph& graph) {
  std::ostringstream out;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const auto& label = graph.vertices()[static_cast<std::size_t>(v)];
    out << (v ? "," : "") << label.degree << ':' << label.polynomial;
  }
  out << " ;";
  for (int e = 0; e < graph.edge_count(); ++e) {
    const auto& [a, b] = graph.edges()[static_cast<std::size_t>(e)];
    out << (e ? "," : " ") << a << '-' << b;
  }
  return out.str();
}

std::vector<ContractionGraph> read_graph_specs(std::istream& in) {
  std::vector<ContractionGraph> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    try {
      out.push_back(parse_graph_spec(text));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

// Isomorphism-invariant refinement key for a vertex: its label, loop count,
// and the sorted multiset of (neighbor label, multiplicity).
struct VertexKey {
  VertexLabel label;
  int loops = 0;
  std::vector<std::pair<VertexLabel, int>> neighbors;

  auto operator<=>(const VertexKey&) const = default;
};

std::vector<VertexKey> vertex_keys(const ContractionGraph& g) {
  const auto nv = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> mult(nv, std::vector<int>(nv, 0));
  for (const auto& [a, b] : g.edges()) {
    ++mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    if (a != b) ++mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
  }
  std::vector<VertexKey> keys(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    keys[v].label = g.vertices()[v];
    keys[v].loops = mult[v][v];
    for (std::size_t u = 0; u < nv; ++u) {
      if (u != v && mult[v][u] > 0) keys[v].neighbors.emplace_back(g.vertices()[u], mult[v][u]);
    }
    std::sort(keys[v].neighbors.begin(), keys[v].neighbors.end());
  }
  return keys;
}

}  // namespace

CanonicalForm canonicalize(const ContractionGraph& graph) {
  const int nv = graph.vertex_count();
  if (nv > kMaxCanonicalVertices) {
    throw std::invalid_argument("canonicalize supports at most " +
                                std::to_string(kMaxCanonicalVertices) + " vertices, got " +
                                std::to_string(nv));
  }
  const auto keys = vertex_keys(graph);

  // order[pos] = original vertex placed at canonical position pos
  std::vector<int> order(static_cast<std::size_t>(nv));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
  });

  // cells of vertices with equal keys; only permutations within cells are tried
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t b = 0; b < order.size();) {
    std::size_t e = b + 1;
    while (e < order.size() && keys[static_cast<std::size_t>(order[e])] ==
                                   keys[static_cast<std::size_t>(order[b])]) {
      ++e;
    }
    cells.emplace_back(b, e);
    // next_permutation below starts from the sorted arrangement
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(b),
              order.begin() + static_cast<std::ptrdiff_t>(e));
    b = e;
  }

  CanonicalForm best;
  best.vertex_labels.reserve(static_cast<std::size_t>(nv));
  for (int v : order) best.vertex_labels.push_back(graph.vertices()[static_cast<std::size_t>(v)]);

  std::vector<int> position(static_cast<std::size_t>(nv));
  std::vector<Edge> code(graph.edges().size());
  bool have_best = false;

  auto consider = [&] {
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      position[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
    }
    for (std::size_t e = 0; e < code.size(); ++e) {
      int a = position[static_cast<std::size_t>(graph.edges()[e].first)];
      int b = position[static_cast<std::size_t>(graph.edges()[e].second)];
      code[e] = a <= b ? Edge{a, b} : Edge{b, a};
    }
    std::sort(code.begin(), code.end());
    if (!have_best || code < best.edge_code) {
      best.edge_code = code;
      have_best = true;
    }
  };

  std::function<void(std::size_t)> permute = [&](std::size_t cell) {
    if (cell == cells.size()) {
      consider();
      return;
    }
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].first);
    const auto last = order.begin() + static_cast<std::ptrdiff_t>(cells[cell].second);
    do {
      permute(cell + 1);
    } while (std::next_permutation(first, last));
  };
  permute(0);
  return best;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// A tensor whose modes are tagged with edge ids. An id appearing twice within
// one node (or across the two operands of a merge) is summed over.
struct Node {
  DenseTensor tensor;
  std::vector<int> legs;
};

// Generalized einsum for one or two operands: labels occurring once survive
// in order of first appearance, labels occurring twice are summed.
Node contract(const Node* a, const Node* b, int extent) {
  std::vector<int> labels;
  std::vector<int> counts;
  auto note = [&](int leg) {
    auto it = std::find(labels.begin(), labels.end(), leg);
    if (it == labels.end()) {
      labels.push_back(leg);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - labels.begin())];
    }
  };
  for (int leg : a->legs) note(leg);
  if (b) {
    for (int leg : b->legs) note(leg);
  }

  // open labels first, then summed ones; a running tuple over all of them
  std::vector<int> open;
  std::vector<int> summed;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (counts[i] == 1 ? open : summed).push_back(labels[i]);
  }
  std::vector<int> all = open;
  all.insert(all.end(), summed.begin(), summed.end());

  auto slot_map = [&](const Node* node) {
    std::vector<std::size_t> map;
    for (int leg : node->legs) {
      map.push_back(static_cast<std::size_t>(std::find(all.begin(), all.end(), leg) - all.begin()));
    }
    return map;
  };
  const auto map_a = slot_map(a);
  const auto map_b = b ? slot_map(b) : std::vector<std::size_t>{};

  Node out{DenseTensor(extent, static_cast<int>(open.size())), open};
  std::vector<int> tuple(all.size(), 0);
  std::vector<int> ia(map_a.size());
  std::vector<int> ib(map_b.size());
  auto out_data = out.tensor.data();
  std::size_t out_flat = 0;
  // open labels are the slowest-varying part of `tuple`, so out_flat advances
  // once every extent^|summed| steps
  std::size_t inner = 1;
  for (std::size_t k = 0; k < summed.size(); ++k) inner *= static_cast<std::size_t>(extent);
  std::size_t step = 0;
  do {
    for (std::size_t k = 0; k < map_a.size(); ++k) ia[k] = tuple[map_a[k]];
    double value = a->tensor(ia);
    if (b && value != 0.0) {
      for (std::size_t k = 0; k < map_b.size(); ++k) ib[k] = tuple[map_b[k]];
      value *= b->tensor(ib);
    }
    out_data[out_flat] += value;
    if (++step == inner) {
      step = 0;
      ++out_flat;
    }
  } while (next_index_tuple(tuple, extent));
  return out;
}

bool has_repeated_leg(const Node& node) {
  for (std::size_t i = 0; i < node.legs.size(); ++i) {
    for (std::size_t j = i + 1; j < node.legs.size(); ++j) {
      if (node.legs[i] == node.legs[j]) return true;
    }
  }
  return false;
}

int shared_legs(const Node& a, const Node& b) {
  int shared = 0;
  for (int leg : a.legs) shared += static_cast<int>(std::count(b.legs.begin(), b.legs.end(), leg));
  return shared;
}

}  // namespace

double evaluate_graph(const ContractionGraph& graph, const PolynomialBindings& polys) {
  if (graph.vertex_count() == 0) throw std::invalid_argument("cannot evaluate an empty graph");

  int extent = -1;
  std::map<std::pair<std::string, int>, DenseTensor> cache;
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(graph.vertex_count()));
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const auto& label = graph.vertices()[static_cast<std::size_t>(v)];
    const auto it = polys.find(label.polynomial);
    if (it == polys.end()) {
      throw std::invalid_argument("no polynomial bound to id '" + label.polynomial + "'");
    }
    const Polynomial& p = it->second;
    if (extent < 0) extent = p.dimension();
    if (p.dimension() != extent) throw DimensionError("graph polynomials differ in dimension");
    if (label.degree > p.max_degree()) {
      throw DimensionError("vertex degree " + std::to_string(label.degree) +
                           " exceeds max degree of polynomial '" + label.polynomial + "'");
    }
    const auto key = std::make_pair(label.polynomial, label.degree);
    auto cached = cache.find(key);
    if (cached == cache.end()) {
      cached = cache.emplace(key, expand_symmetric(p.part(label.degree))).first;
    }
    std::vector<int> legs;
    for (int e = 0; e < graph.edge_count(); ++e) {
      const auto& [a, b] = graph.edges()[static_cast<std::size_t>(e)];
      if (a == v) legs.push_back(e);
      if (b == v) legs.push_back(e);
    }
    nodes.push_back(Node{cached->second, std::move(legs)});
  }

  for (auto& node : nodes) {
    if (has_repeated_leg(node)) node = contract(&node, nullptr, extent);
  }

  double scalar = 1.0;
  while (!nodes.empty()) {
    // fold finished scalars in declaration order
    for (auto it = nodes.begin(); it != nodes.end();) {
      if (it->legs.empty()) {
        scalar *= it->tensor.data()[0];
        it = nodes.erase(it);
      } else {
        ++it;
      }
    }
    if (nodes.empty()) break;

    std::size_t best_i = 0;
    std::size_t best_j = 0;
    int best_order = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        const int shared = shared_legs(nodes[i], nodes[j]);
        if (shared == 0) continue;
        const int order = static_cast<int>(nodes[i].legs.size() + nodes[j].legs.size()) - 2 * shared;
        if (best_order < 0 || order < best_order) {
          best_order = order;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_order < 0) throw std::logic_error("dangling edge in contraction graph");
    Node merged = contract(&nodes[best_i], &nodes[best_j], extent);
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(best_j));
    nodes[best_i] = std::move(merged);
  }
  return scalar;
}

double evaluate_graph(const ContractionGraph& graph, const Polynomial& p) {
  PolynomialBindings bindings;
  for (const auto& label : graph.vertices()) bindings.try_emplace(label.polynomial, p);
  return evaluate_graph(graph, bindings);
}

double trace_power(const Polynomial& p, int m) {
  if (m < 1) throw std::invalid_argument("trace power needs m >= 1");
  const Eigen::MatrixXd a = quadratic_matrix(p);
  Eigen::MatrixXd power = a;
  for (int k = 1; k < m; ++k) power = power * a;
  return power.trace();
}

// ---------------------------------------------------------------------------
// Builders

ContractionGraph cycle_graph(int m, const std::string& polynomial) {
  if (m < 1) throw std::invalid_argument("cycle needs at least one vertex");
  std::vector<VertexLabel> vertices(static_cast<std::size_t>(m), VertexLabel{2, polynomial});
  std::vector<Edge> edges;
  for (int v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
  return ContractionGraph(std::move(vertices), std::move(edges));
}

ContractionGraph two_vertex_graph(int degree, const std::string& first, const std::string& second) {
  std::vector<VertexLabel> vertices{{degree, first}, {degree, second}};
  std::vector<Edge> edges(static_cast<std::size_t>(degree), Edge{0, 1});
  return ContractionGraph(std::move(vertices), std::move(edges));
}

ContractionGraph inserted_graph(int degree, int insertions, int power, const std::string& polynomial) {
  if (insertions < 0 || insertions > degree) {
    throw std::invalid_argument("insertion count must lie in 0..degree");
  }
  if (power < 0) throw std::invalid_argument("inserted power must be >= 0");
  std::vector<VertexLabel> vertices{{degree, polynomial}, {degree, polynomial}};
  std::vector<Edge> edges;
  for (int e = 0; e < degree; ++e) {
    if (e >= insertions || power == 0) {
      edges.emplace_back(0, 1);
      continue;
    }
    int previous = 0;
    for (int k = 0; k < power; ++k) {
      const int v = static_cast<int>(vertices.size());
      vertices.push_back({2, polynomial});
      edges.emplace_back(previous, v);
      previous = v;
    }
    edges.emplace_back(1, previous);
  }
  return ContractionGraph(std::move(vertices), std::move(edges));
}

}  // namespace polyinv

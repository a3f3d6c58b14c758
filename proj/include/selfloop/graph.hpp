#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selfloop/error.hpp"

namespace selfloop {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;
};

struct Neighbor {
  int vertex = 0;
  double weight = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Undirected weighted simple graph plus one self-loop weight per vertex.
///
/// Edge weights live in a CSR adjacency (neighbors sorted by id, never the
/// vertex itself); self-interaction lives only in `self_loops()`. Values are
/// immutable after construction, so a Graph can be shared freely between
/// threads.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Rejects self-edges, duplicate unordered pairs,
  /// out-of-range ids and non-positive weights. Self-loops start at zero.
  static Graph from_edges(int n, std::span<const Edge> edges) {
    if (n < 1) throw Error(Errc::IndexOutOfRange, "vertex count must be positive");
    std::vector<std::vector<Neighbor>> rows(static_cast<std::size_t>(n));
    for (const Edge& e : edges) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw Error(Errc::IndexOutOfRange,
                    "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n=" +
                        std::to_string(n));
      if (e.u == e.v) throw Error(Errc::SelfEdgeInEdgeList, "vertex " + std::to_string(e.u));
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw Error(Errc::InvalidWeight, "edge (" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) + ")");
      rows[static_cast<std::size_t>(e.u)].push_back({e.v, e.weight});
      rows[static_cast<std::size_t>(e.v)].push_back({e.u, e.weight});
    }
    Graph g = from_rows(std::move(rows));
    for (int i = 0; i < n; ++i) {
      auto nb = g.neighbors(i);
      for (std::size_t t = 1; t < nb.size(); ++t)
        if (nb[t].vertex == nb[t - 1].vertex)
          throw Error(Errc::DuplicateEdge,
                      "(" + std::to_string(i) + "," + std::to_string(nb[t].vertex) + ")");
    }
    return g;
  }

  /// Raw import from a dense weight matrix. Entries > 0 off the diagonal become
  /// arcs; the matrix is not checked for symmetry here (`validate` does that).
  static Graph from_dense(const std::vector<std::vector<double>>& weights,
                          std::vector<double> self_loops = {}) {
    const auto n = weights.size();
    std::vector<std::vector<Neighbor>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (weights[i].size() != n) throw Error(Errc::IndexOutOfRange, "matrix is not square");
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && weights[i][j] > 0.0) rows[i].push_back({static_cast<int>(j), weights[i][j]});
    }
    Graph g = from_rows(std::move(rows));
    if (!self_loops.empty()) g = g.with_self_loops(std::move(self_loops));
    return g;
  }

  int size() const noexcept { return n_; }

  std::span<const Neighbor> neighbors(int i) const noexcept {
    const auto b = offsets_[static_cast<std::size_t>(i)];
    const auto e = offsets_[static_cast<std::size_t>(i) + 1];
    return {adj_.data() + b, e - b};
  }

  int degree(int i) const noexcept {
    return static_cast<int>(offsets_[static_cast<std::size_t>(i) + 1] -
                            offsets_[static_cast<std::size_t>(i)]);
  }

  std::vector<int> degrees() const {
    std::vector<int> k(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) k[static_cast<std::size_t>(i)] = degree(i);
    return k;
  }

  std::span<const double> self_loops() const noexcept { return loops_; }
  double self_loop(int i) const noexcept { return loops_[static_cast<std::size_t>(i)]; }

  /// Edge weight between distinct vertices (0 if absent). The diagonal of the
  /// edge-weight matrix is always 0; use `self_loop` for w_ii.
  double weight(int i, int j) const noexcept {
    auto nb = neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), j,
                               [](const Neighbor& a, int v) { return a.vertex < v; });
    return (it != nb.end() && it->vertex == j) ? it->weight : 0.0;
  }

  /// Vertex strength: self-loop plus incident edge weights.
  double strength(int i) const noexcept {
    double s = self_loop(i);
    for (const auto& nb : neighbors(i)) s += nb.weight;
    return s;
  }

  std::size_t edge_count() const noexcept { return adj_.size() / 2; }

  /// Unordered edges with u < v, sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (int i = 0; i < n_; ++i)
      for (const auto& nb : neighbors(i))
        if (i < nb.vertex) out.push_back({i, nb.vertex, nb.weight});
    return out;
  }

  /// Copy with replaced self-loop weights; each must be finite and >= 0.
  Graph with_self_loops(std::vector<double> loops) const {
    if (loops.size() != static_cast<std::size_t>(n_))
      throw Error(Errc::LandscapeSizeMismatch, "expected " + std::to_string(n_) + " values, got " +
                                                   std::to_string(loops.size()));
    for (std::size_t i = 0; i < loops.size(); ++i) {
      if (!std::isfinite(loops[i]))
        throw Error(Errc::InvalidWeight, "non-finite self-loop at vertex " + std::to_string(i));
      if (loops[i] < 0.0)
        throw Error(Errc::NegativeLandscapeValue, "vertex " + std::to_string(i));
    }
    Graph g = *this;
    g.loops_ = std::move(loops);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adj_ == b.adj_ && a.loops_ == b.loops_;
  }

 private:
  static Graph from_rows(std::vector<std::vector<Neighbor>> rows) {
    Graph g;
    g.n_ = static_cast<int>(rows.size());
    g.offsets_.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::sort(rows[i].begin(), rows[i].end(),
                [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
      g.offsets_[i + 1] = g.offsets_[i] + rows[i].size();
    }
    g.adj_.reserve(g.offsets_.back());
    for (auto& r : rows) g.adj_.insert(g.adj_.end(), r.begin(), r.end());
    g.loops_.assign(rows.size(), 0.0);
    return g;
  }

  int n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adj_;
  std::vector<double> loops_;
};

inline Graph build_graph(int n, std::span<const Edge> edges) { return Graph::from_edges(n, edges); }

inline Graph build_graph(int n, std::initializer_list<Edge> edges) {
  return Graph::from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Connected-component label per vertex, labels in order of first vertex.
inline std::vector<int> component_labels(const Graph& g) {
  std::vector<int> label(static_cast<std::size_t>(g.size()), -1);
  int next = 0;
  std::queue<int> q;
  for (int s = 0; s < g.size(); ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const auto& nb : g.neighbors(u))
        if (label[static_cast<std::size_t>(nb.vertex)] < 0) {
          label[static_cast<std::size_t>(nb.vertex)] = next;
          q.push(nb.vertex);
        }
    }
    ++next;
  }
  return label;
}

inline bool is_connected(const Graph& g) {
  if (g.size() == 0) return false;
  auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](int c) { return c == 0; });
}

/// Induced subgraph on the largest connected component (ties: lowest label).
/// Vertices keep their relative order; self-loops are carried over.
inline Graph largest_component(const Graph& g) {
  auto label = component_labels(g);
  if (label.empty()) return g;
  int ncomp = *std::max_element(label.begin(), label.end()) + 1;
  std::vector<int> count(static_cast<std::size_t>(ncomp), 0);
  for (int c : label) ++count[static_cast<std::size_t>(c)];
  const int best = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  if (count[static_cast<std::size_t>(best)] == g.size()) return g;

  std::vector<int> remap(static_cast<std::size_t>(g.size()), -1);
  std::vector<double> loops;
  int m = 0;
  for (int i = 0; i < g.size(); ++i)
    if (label[static_cast<std::size_t>(i)] == best) {
      remap[static_cast<std::size_t>(i)] = m++;
      loops.push_back(g.self_loop(i));
    }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (remap[static_cast<std::size_t>(e.u)] >= 0)
      edges.push_back({remap[static_cast<std::size_t>(e.u)], remap[static_cast<std::size_t>(e.v)],
                       e.weight});
  return Graph::from_edges(m, edges).with_self_loops(std::move(loops));
}

enum class Purpose { General, Threshold };

/// Throws on the first violated invariant. `Purpose::Threshold` additionally
/// requires n >= 3: on two vertices the critical ratio is 0/0.
inline void validate(const Graph& g, Purpose purpose = Purpose::General) {
  if (g.size() < 1) throw Error(Errc::TooSmall, "empty graph");
  for (int i = 0; i < g.size(); ++i) {
    for (const auto& nb : g.neighbors(i)) {
      if (nb.vertex == i) throw Error(Errc::SelfEdgeInEdgeList, "vertex " + std::to_string(i));
      if (!(nb.weight >= 0.0) || !std::isfinite(nb.weight))
        throw Error(Errc::InvalidWeight, "edge at vertex " + std::to_string(i));
      if (g.weight(nb.vertex, i) != nb.weight)
        throw Error(Errc::AsymmetricWeights,
                    "w(" + std::to_string(i) + "," + std::to_string(nb.vertex) + ")");
    }
    double l = g.self_loop(i);
    if (!std::isfinite(l) || l < 0.0)
      throw Error(Errc::NegativeLandscapeValue, "vertex " + std::to_string(i));
  }
  if (!is_connected(g)) throw Error(Errc::Disconnected);
  if (purpose == Purpose::Threshold && g.size() < 3)
    throw Error(Errc::TooSmall, "threshold analysis needs at least 3 vertices");
}

struct DegreeMetrics {
  double mean_degree = 0.0;           // <k>
  double mean_neighbor_degree = 0.0;  // <k^2>/<k>
};

inline DegreeMetrics degree_metrics(const Graph& g) {
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double k = g.degree(i);
    sum += k;
    sum_sq += k * k;
  }
  DegreeMetrics m;
  m.mean_degree = sum / g.size();
  m.mean_neighbor_degree = sum > 0.0 ? sum_sq / sum : 0.0;
  return m;
}

}  // namespace selfloop

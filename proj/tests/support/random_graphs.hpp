#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "selfloop/graph.hpp"

namespace testgen {

struct Instance {
  selfloop::Graph graph;
  oracle::Matrix w;
  std::vector<double> loops;
};

// Connected graph: a random spanning tree plus extra edges with probability
// `extra`, optional random weights in [0.5, 2], loops uniform in [0, max_loop].
inline Instance random_connected(std::mt19937_64& rng, int n, double extra, double max_loop, bool weighted) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::set<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v) {
    const int parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
    pairs.insert({parent, v});
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (u01(rng) < extra) pairs.insert({a, b});

  Instance inst;
  inst.w = oracle::zeros(static_cast<std::size_t>(n));
  std::vector<selfloop::Edge> edges;
  for (auto [a, b] : pairs) {
    const double wt = weighted ? 0.5 + 1.5 * u01(rng) : 1.0;
    edges.push_back({a, b, wt});
    inst.w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = wt;
    inst.w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = wt;
  }
  inst.loops.resize(static_cast<std::size_t>(n));
  for (auto& l : inst.loops) l = u01(rng) < 0.2 ? 0.0 : max_loop * u01(rng);
  inst.graph = selfloop::Graph::from_edges(n, edges).with_self_loops(inst.loops);
  return inst;
}

// Dense weight matrix of a library graph (for feeding the oracle).
inline oracle::Matrix dense_weights(const selfloop::Graph& g) {
  oracle::Matrix w = oracle::zeros(static_cast<std::size_t>(g.size()));
  for (const auto& e : g.edges()) {
    w[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = e.weight;
    w[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = e.weight;
  }
  return w;
}

inline std::vector<double> loops_of(const selfloop::Graph& g) {
  return {g.self_loops().begin(), g.self_loops().end()};
}

}  // namespace testgen

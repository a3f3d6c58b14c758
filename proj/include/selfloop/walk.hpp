#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "selfloop/graph.hpp"

namespace selfloop {

/// Row-stochastic one-step transition matrix of the random walk on a graph
/// with self-loops: p_ii = l_i / s_i, p_ij = w_ij / s_i, where s_i is the
/// vertex strength. Off-diagonal entries share the graph's CSR layout.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;

  explicit TransitionMatrix(const Graph& g) : n_(g.size()) {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    diag_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      const double s = g.strength(i);
      if (!(s > 0.0)) throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(i));
      diag_[static_cast<std::size_t>(i)] = g.self_loop(i) / s;
      for (const auto& nb : g.neighbors(i)) entries_.push_back({nb.vertex, nb.weight / s});
      offsets_[static_cast<std::size_t>(i) + 1] = entries_.size();
    }
  }

  int size() const noexcept { return n_; }

  /// Off-diagonal transitions out of i, as (target, probability).
  std::span<const Neighbor> row(int i) const noexcept {
    const auto b = offsets_[static_cast<std::size_t>(i)];
    const auto e = offsets_[static_cast<std::size_t>(i) + 1];
    return {entries_.data() + b, e - b};
  }

  double self(int i) const noexcept { return diag_[static_cast<std::size_t>(i)]; }
  std::span<const double> diagonal() const noexcept { return diag_; }

  double operator()(int i, int j) const noexcept {
    if (i == j) return self(i);
    for (const auto& e : row(i))
      if (e.vertex == j) return e.weight;
    return 0.0;
  }

  /// Dense row-major copy; meant for small graphs and tests.
  std::vector<double> dense() const {
    const auto n = static_cast<std::size_t>(n_);
    std::vector<double> m(n * n, 0.0);
    for (int i = 0; i < n_; ++i) {
      m[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(i)] = self(i);
      for (const auto& e : row(i))
        m[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(e.vertex)] = e.weight;
    }
    return m;
  }

 private:
  int n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> entries_;
  std::vector<double> diag_;
};

inline TransitionMatrix transition_matrix(const Graph& g) { return TransitionMatrix(g); }

/// pi_i proportional to vertex strength. The walk is reversible, so this is
/// the stationary distribution for any connected graph.
inline std::vector<double> stationary_distribution(const Graph& g) {
  std::vector<double> pi(static_cast<std::size_t>(g.size()));
  double total = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    pi[static_cast<std::size_t>(i)] = g.strength(i);
    total += pi[static_cast<std::size_t>(i)];
  }
  for (auto& p : pi) p /= total;
  return pi;
}

/// Diagonal of P^steps for steps in {2, 3}, by per-row sparse expansion.
inline std::vector<double> n_step_return(const TransitionMatrix& p, int steps) {
  if (steps != 2 && steps != 3)
    throw Error(Errc::UnsupportedStep, "steps=" + std::to_string(steps));
  const int n = p.size();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  if (steps == 2) {
    for (int i = 0; i < n; ++i) {
      double acc = p.self(i) * p.self(i);
      for (const auto& e : p.row(i)) acc += e.weight * p(e.vertex, i);
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }
  // steps == 3: two-step row from i into a scratch vector, then close the loop.
  std::vector<double> two(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  for (int i = 0; i < n; ++i) {
    auto add = [&](int j, double w) {
      auto& slot = two[static_cast<std::size_t>(j)];
      if (slot == 0.0) touched.push_back(j);
      slot += w;
    };
    auto spread = [&](int j, double w) {
      if (p.self(j) != 0.0) add(j, w * p.self(j));
      for (const auto& e : p.row(j)) add(e.vertex, w * e.weight);
    };
    if (p.self(i) != 0.0) spread(i, p.self(i));
    for (const auto& e : p.row(i)) spread(e.vertex, e.weight);

    double acc = 0.0;
    for (int k : touched) {
      acc += two[static_cast<std::size_t>(k)] * p(k, i);
      two[static_cast<std::size_t>(k)] = 0.0;
    }
    touched.clear();
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

inline std::vector<double> n_step_return(const Graph& g, int steps) {
  return n_step_return(TransitionMatrix(g), steps);
}

/// Everything downstream needs from the walk, computed once per graph.
struct WalkCache {
  TransitionMatrix p1;
  std::vector<double> pi;
  std::vector<double> p2_diag;
  std::vector<double> p3_diag;

  WalkCache() = default;
  explicit WalkCache(const Graph& g)
      : p1(g), pi(stationary_distribution(g)), p2_diag(n_step_return(p1, 2)),
        p3_diag(n_step_return(p1, 3)) {}

  int size() const noexcept { return p1.size(); }
};

}  // namespace selfloop

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "selfloop/format.hpp"
#include "selfloop/graph.hpp"

namespace selfloop {

namespace detail {

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t salt = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return std::mt19937_64(seq);
}

/// Simple undirected edge set used while building random graphs.
class EdgeSet {
 public:
  explicit EdgeSet(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  int size() const noexcept { return n_; }
  bool has(int u, int v) const { return adj_[static_cast<std::size_t>(u)].count(v) > 0; }

  bool add(int u, int v) {
    if (u == v || has(u, v)) return false;
    adj_[static_cast<std::size_t>(u)].insert(v);
    adj_[static_cast<std::size_t>(v)].insert(u);
    return true;
  }

  void remove(int u, int v) {
    adj_[static_cast<std::size_t>(u)].erase(v);
    adj_[static_cast<std::size_t>(v)].erase(u);
  }

  const std::set<int>& neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
  int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }

  Graph build() const {
    std::vector<Edge> edges;
    for (int u = 0; u < n_; ++u)
      for (int v : neighbors(u))
        if (u < v) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n_, edges);
  }

 private:
  int n_;
  std::vector<std::set<int>> adj_;
};

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::InvalidFamilyParams, what);
}

/// Ring where every vertex links to its k/2 nearest neighbors on each side.
inline EdgeSet ring_lattice(int n, int k) {
  EdgeSet es(n);
  for (int u = 0; u < n; ++u)
    for (int j = 1; j <= k / 2; ++j) es.add(u, (u + j) % n);
  return es;
}

}  // namespace detail

// Deterministic families

/// Hub 0, leaves 1..N-1.
inline Graph star_graph(int N) {
  detail::require(N >= 2, "star needs N >= 2");
  std::vector<Edge> e;
  for (int i = 1; i < N; ++i) e.push_back({0, i, 1.0});
  return Graph::from_edges(N, e);
}

/// Two N-vertex stars with hubs 0 and N joined by an edge.
inline Graph hubhub_graph(int N) {
  detail::require(N >= 2, "hub-hub needs N >= 2");
  std::vector<Edge> e{{0, N, 1.0}};
  for (int i = 1; i < N; ++i) {
    e.push_back({0, i, 1.0});
    e.push_back({N, N + i, 1.0});
  }
  return Graph::from_edges(2 * N, e);
}

/// Hub 0; leaves paired as (1,2), (3,4), ...
inline Graph ceiling_fan_graph(int N) {
  detail::require(N >= 3 && N % 2 == 1, "ceiling fan needs odd N >= 3");
  std::vector<Edge> e;
  for (int i = 1; i < N; ++i) e.push_back({0, i, 1.0});
  for (int i = 1; i < N; i += 2) e.push_back({i, i + 1, 1.0});
  return Graph::from_edges(N, e);
}

inline Graph cycle_graph(int N) {
  detail::require(N >= 3, "cycle needs N >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < N; ++i) e.push_back({i, (i + 1) % N, 1.0});
  return Graph::from_edges(N, e);
}

inline Graph complete_graph(int N) {
  detail::require(N >= 2, "complete graph needs N >= 2");
  std::vector<Edge> e;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) e.push_back({i, j, 1.0});
  return Graph::from_edges(N, e);
}

inline Graph petersen_graph() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back({i, (i + 1) % 5, 1.0});
    e.push_back({i, i + 5, 1.0});
    e.push_back({5 + i, 5 + (i + 2) % 5, 1.0});
  }
  return Graph::from_edges(10, e);
}

enum class LatticeKind { Hex3, Square4, Tri6 };

/// Periodic lattices on rows x cols sites (vertex id r*cols + c). Hex3 is the
/// brick-wall embedding of the honeycomb and needs an even row count.
inline Graph lattice_graph(LatticeKind kind, int rows, int cols) {
  detail::require(rows >= 3 && cols >= 3, "lattice needs at least 3 rows and 3 columns");
  if (kind == LatticeKind::Hex3) detail::require(rows % 2 == 0, "hex lattice needs an even row count");
  const int n = rows * cols;
  auto id = [&](int r, int c) { return ((r + rows) % rows) * cols + (c + cols) % cols; };
  detail::EdgeSet es(n);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int u = id(r, c);
      es.add(u, id(r, c + 1));
      switch (kind) {
        case LatticeKind::Hex3:
          if ((r + c) % 2 == 0) es.add(u, id(r + 1, c));
          break;
        case LatticeKind::Square4:
          es.add(u, id(r + 1, c));
          break;
        case LatticeKind::Tri6:
          es.add(u, id(r + 1, c));
          es.add(u, id(r + 1, c + 1));
          break;
      }
    }
  return es.build();
}

// Random models

/// Uniform-ish random k-regular simple graph by the Steger-Wormald pairing
/// process, restarted until the result is connected. For k > (N-1)/2 the
/// complement of a random (N-1-k)-regular graph is returned.
inline Graph random_regular_graph(int N, int k, std::uint64_t seed, int max_restarts = 1000) {
  detail::require(N >= 3 && k >= 1 && k < N && (N * k) % 2 == 0, "random regular needs 1 <= k < N, N*k even");
  if (k == N - 1) return complete_graph(N);
  const bool complement = 2 * k > N - 1;
  const int kk = complement ? N - 1 - k : k;
  auto rng = detail::make_rng(seed, 0x5257);

  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    detail::EdgeSet es(N);
    std::vector<int> points;
    for (int u = 0; u < N; ++u)
      for (int j = 0; j < kk; ++j) points.push_back(u);
    bool stuck = false;
    while (!points.empty() && !stuck) {
      bool paired = false;
      for (int tries = 0; tries < 100 * static_cast<int>(points.size()); ++tries) {
        const int a = detail::uniform_int(rng, 0, static_cast<int>(points.size()) - 1);
        const int b = detail::uniform_int(rng, 0, static_cast<int>(points.size()) - 1);
        const int u = points[static_cast<std::size_t>(a)], v = points[static_cast<std::size_t>(b)];
        if (a == b || u == v || es.has(u, v)) continue;
        es.add(u, v);
        const auto hi = static_cast<std::size_t>(std::max(a, b)), lo = static_cast<std::size_t>(std::min(a, b));
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
        paired = true;
        break;
      }
      stuck = !paired;
    }
    if (stuck) continue;
    Graph g = es.build();
    if (complement) {
      detail::EdgeSet co(N);
      for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v)
          if (!es.has(u, v)) co.add(u, v);
      g = co.build();
    }
    if (is_connected(g)) return g;
  }
  throw Error(Errc::ConnectivityRetriesExhausted, "random regular N=" + std::to_string(N));
}

/// Barabasi-Albert preferential attachment from a complete core on m+1
/// vertices; every later vertex brings m edges, so |E| = m(m+1)/2 + m(N-m-1).
inline Graph barabasi_albert_graph(int N, int m, std::uint64_t seed) {
  detail::require(m >= 1 && N > m, "BA needs 1 <= m < N");
  auto rng = detail::make_rng(seed, 0x4241);
  detail::EdgeSet es(N);
  std::vector<int> ends;  // each vertex repeated once per incident edge
  for (int u = 0; u <= m; ++u)
    for (int v = u + 1; v <= m; ++v) {
      es.add(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  for (int v = m + 1; v < N; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < m)
      targets.insert(ends[static_cast<std::size_t>(detail::uniform_int(rng, 0, static_cast<int>(ends.size()) - 1))]);
    for (int t : targets) {
      es.add(v, t);
      ends.push_back(v);
      ends.push_back(t);
    }
  }
  return es.build();
}

/// Erdos-Renyi G(N, p). Disconnected results throw unless `lcc` is set, in
/// which case the largest component is returned.
inline Graph erdos_renyi_graph(int N, double p, std::uint64_t seed, bool lcc = false) {
  detail::require(N >= 2 && p >= 0.0 && p <= 1.0, "ER needs N >= 2 and 0 <= p <= 1");
  auto rng = detail::make_rng(seed, 0x4552);
  detail::EdgeSet es(N);
  for (int u = 0; u < N; ++u)
    for (int v = u + 1; v < N; ++v)
      if (detail::coin(rng, p)) es.add(u, v);
  Graph g = es.build();
  if (is_connected(g)) return g;
  if (!lcc) throw Error(Errc::Disconnected, "ER sample; pass the largest-component flag to keep it");
  return largest_component(g);
}

/// Holme-Kim: preferential attachment where, after each attachment, the next
/// link closes a triangle with probability pt.
inline Graph holme_kim_graph(int N, int m, double pt, std::uint64_t seed) {
  detail::require(m >= 1 && N > m && pt >= 0.0 && pt <= 1.0, "HK needs 1 <= m < N and 0 <= pt <= 1");
  auto rng = detail::make_rng(seed, 0x484b);
  detail::EdgeSet es(N);
  std::vector<int> ends;
  for (int u = 0; u <= m; ++u)
    for (int v = u + 1; v <= m; ++v) {
      es.add(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  auto pa_pick = [&](int v) {
    for (;;) {
      const int t = ends[static_cast<std::size_t>(detail::uniform_int(rng, 0, static_cast<int>(ends.size()) - 1))];
      if (t != v && !es.has(v, t)) return t;
    }
  };
  for (int v = m + 1; v < N; ++v) {
    int anchor = pa_pick(v);
    es.add(v, anchor);
    std::vector<int> added{anchor};
    while (static_cast<int>(added.size()) < m) {
      int t = -1;
      if (detail::coin(rng, pt)) {
        std::vector<int> cand;
        for (int w : es.neighbors(anchor))
          if (w != v && !es.has(v, w)) cand.push_back(w);
        if (!cand.empty()) t = cand[static_cast<std::size_t>(detail::uniform_int(rng, 0, static_cast<int>(cand.size()) - 1))];
      }
      if (t < 0) {
        t = pa_pick(v);
        anchor = t;
      }
      es.add(v, t);
      added.push_back(t);
    }
    for (int t : added) {
      ends.push_back(v);
      ends.push_back(t);
    }
  }
  return es.build();
}

/// Duplication-divergence: a random protoplast is copied, the replica keeps
/// each of its edges with probability p and links to the protoplast itself
/// with probability p. Starts from a single edge.
inline Graph duplication_divergence_graph(int N, double p, std::uint64_t seed, bool lcc = false) {
  detail::require(N >= 2 && p >= 0.0 && p <= 1.0, "DD needs N >= 2 and 0 <= p <= 1");
  auto rng = detail::make_rng(seed, 0x4444);
  detail::EdgeSet es(N);
  es.add(0, 1);
  for (int v = 2; v < N; ++v) {
    const int proto = detail::uniform_int(rng, 0, v - 1);
    const std::vector<int> nb(es.neighbors(proto).begin(), es.neighbors(proto).end());
    for (int w : nb)
      if (detail::coin(rng, p)) es.add(v, w);
    if (detail::coin(rng, p)) es.add(v, proto);
  }
  Graph g = es.build();
  if (is_connected(g)) return g;
  if (!lcc) throw Error(Errc::Disconnected, "DD sample; pass the largest-component flag to keep it");
  return largest_component(g);
}

/// Watts-Strogatz: ring lattice of even degree k, each lattice edge rewired at
/// its far end with probability p. Resampled until connected.
inline Graph watts_strogatz_graph(int N, int k, double p, std::uint64_t seed, int max_retries = 100) {
  detail::require(k >= 2 && k % 2 == 0 && k < N && p >= 0.0 && p <= 1.0, "WS needs even 2 <= k < N and 0 <= p <= 1");
  auto rng = detail::make_rng(seed, 0x5753);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    detail::EdgeSet es = detail::ring_lattice(N, k);
    for (int j = 1; j <= k / 2; ++j)
      for (int u = 0; u < N; ++u) {
        const int v = (u + j) % N;
        if (!detail::coin(rng, p) || !es.has(u, v)) continue;
        if (es.degree(u) >= N - 1) continue;
        int w;
        do w = detail::uniform_int(rng, 0, N - 1);
        while (w == u || es.has(u, w));
        es.remove(u, v);
        es.add(u, w);
      }
    Graph g = es.build();
    if (is_connected(g)) return g;
  }
  throw Error(Errc::ConnectivityRetriesExhausted, "WS N=" + std::to_string(N));
}

/// Newman-Watts: ring lattice of even degree k plus, for each lattice edge
/// and with probability p, one shortcut between two uniformly chosen vertices.
inline Graph newman_watts_graph(int N, int k, double p, std::uint64_t seed) {
  detail::require(k >= 2 && k % 2 == 0 && k < N && p >= 0.0 && p <= 1.0, "NW needs even 2 <= k < N and 0 <= p <= 1");
  auto rng = detail::make_rng(seed, 0x4e57);
  detail::EdgeSet es = detail::ring_lattice(N, k);
  const long lattice_edges = static_cast<long>(N) * (k / 2);
  const long max_edges = static_cast<long>(N) * (N - 1) / 2;
  long edges = lattice_edges;
  for (long e = 0; e < lattice_edges; ++e) {
    if (!detail::coin(rng, p) || edges >= max_edges) continue;
    for (;;) {
      const int u = detail::uniform_int(rng, 0, N - 1), v = detail::uniform_int(rng, 0, N - 1);
      if (es.add(u, v)) break;
    }
    ++edges;
  }
  return es.build();
}

// Model strings

struct GeneratorSpec {
  enum class Model {
    Star, HubHub, CeilingFan, Cycle, Complete, Petersen, Lattice,
    RandomRegular, BA, ER, HK, DD, WS, NW
  };
  Model model = Model::Star;
  int n = 0;
  int k = 0;  // degree, m, or lattice columns
  double p = 0.0;
  LatticeKind lattice = LatticeKind::Square4;
  std::string text;

  bool is_random() const noexcept { return model >= Model::RandomRegular; }
};

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline int to_int(const std::string& s) {
  double v = 0.0;
  if (!parse_real(s, v) || v != static_cast<double>(static_cast<int>(v)))
    throw Error(Errc::ParseError, "expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

inline double to_real(const std::string& s) {
  double v = 0.0;
  if (!parse_real(s, v)) throw Error(Errc::ParseError, "expected a number, got '" + s + "'");
  return v;
}

}  // namespace detail

/// Parses model strings such as "star:10", "hubhub:5", "fan:15", "cycle:8",
/// "complete:6", "petersen", "lattice:square4:10x10", "rr:100:4",
/// "ba:100:3", "er:50:0.1", "hk:100:3:0.5", "dd:100:0.4", "ws:40:4:0.1",
/// "nw:100:4:0.1".
inline GeneratorSpec parse_model(std::string_view text) {
  using M = GeneratorSpec::Model;
  const auto f = detail::split(text, ':');
  GeneratorSpec s;
  s.text = std::string(text);
  auto need = [&](std::size_t count) {
    if (f.size() != count) throw Error(Errc::ParseError, "model '" + s.text + "' has the wrong number of fields");
  };
  const std::string& name = f[0];
  if (name == "star" || name == "hubhub" || name == "fan" || name == "cycle" || name == "complete") {
    need(2);
    s.model = name == "star" ? M::Star : name == "hubhub" ? M::HubHub : name == "fan" ? M::CeilingFan
              : name == "cycle" ? M::Cycle : M::Complete;
    s.n = detail::to_int(f[1]);
  } else if (name == "petersen") {
    need(1);
    s.model = M::Petersen;
    s.n = 10;
  } else if (name == "lattice") {
    need(3);
    s.model = M::Lattice;
    if (f[1] == "hex3") s.lattice = LatticeKind::Hex3;
    else if (f[1] == "square4") s.lattice = LatticeKind::Square4;
    else if (f[1] == "tri6") s.lattice = LatticeKind::Tri6;
    else throw Error(Errc::ParseError, "unknown lattice '" + f[1] + "'");
    const auto dims = detail::split(f[2], 'x');
    if (dims.size() != 2) throw Error(Errc::ParseError, "lattice size must be ROWSxCOLS");
    s.n = detail::to_int(dims[0]);
    s.k = detail::to_int(dims[1]);
  } else if (name == "rr" || name == "ba") {
    need(3);
    s.model = name == "rr" ? M::RandomRegular : M::BA;
    s.n = detail::to_int(f[1]);
    s.k = detail::to_int(f[2]);
  } else if (name == "er" || name == "dd") {
    need(3);
    s.model = name == "er" ? M::ER : M::DD;
    s.n = detail::to_int(f[1]);
    s.p = detail::to_real(f[2]);
  } else if (name == "hk" || name == "ws" || name == "nw") {
    need(4);
    s.model = name == "hk" ? M::HK : name == "ws" ? M::WS : M::NW;
    s.n = detail::to_int(f[1]);
    s.k = detail::to_int(f[2]);
    s.p = detail::to_real(f[3]);
  } else {
    throw Error(Errc::ParseError, "unknown model '" + name + "'");
  }
  return s;
}

inline Graph generate(const GeneratorSpec& s, std::uint64_t seed = 0, bool lcc = false) {
  using M = GeneratorSpec::Model;
  switch (s.model) {
    case M::Star: return star_graph(s.n);
    case M::HubHub: return hubhub_graph(s.n);
    case M::CeilingFan: return ceiling_fan_graph(s.n);
    case M::Cycle: return cycle_graph(s.n);
    case M::Complete: return complete_graph(s.n);
    case M::Petersen: return petersen_graph();
    case M::Lattice: return lattice_graph(s.lattice, s.n, s.k);
    case M::RandomRegular: return random_regular_graph(s.n, s.k, seed);
    case M::BA: return barabasi_albert_graph(s.n, s.k, seed);
    case M::ER: return erdos_renyi_graph(s.n, s.p, seed, lcc);
    case M::HK: return holme_kim_graph(s.n, s.k, s.p, seed);
    case M::DD: return duplication_divergence_graph(s.n, s.p, seed, lcc);
    case M::WS: return watts_strogatz_graph(s.n, s.k, s.p, seed);
    case M::NW: return newman_watts_graph(s.n, s.k, s.p, seed);
  }
  throw Error(Errc::InvalidFamilyParams, s.text);
}

inline Graph generate(std::string_view model, std::uint64_t seed = 0, bool lcc = false) {
  return generate(parse_model(model), seed, lcc);
}

}  // namespace selfloop

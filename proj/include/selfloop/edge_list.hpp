#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "selfloop/format.hpp"
#include "selfloop/graph.hpp"

namespace selfloop {

/// Reads whitespace-separated `u v [weight]` lines. Lines starting with '#'
/// and blank lines are skipped. Vertex tokens are arbitrary strings, mapped to
/// dense ids in order of first appearance. A repeated unordered pair keeps the
/// first weight. The result is not validated (connectivity is up to the caller).
inline Graph from_edge_list(std::istream& in) {
  std::unordered_map<std::string, int> ids;
  auto id_of = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<Edge> edges;
  std::unordered_set<long long> seen;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.size() < 2 || tok.size() > 3)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 2 or 3 fields");
    double w = 1.0;
    if (tok.size() == 3 && (!parse_real(tok[2], w) || !(w > 0.0) || !std::isfinite(w)))
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad weight '" + tok[2] + "'");
    if (tok[0] == tok[1])
      throw Error(Errc::SelfEdgeInEdgeList, "line " + std::to_string(line_no) + ": '" + tok[0] + "'");
    int u = id_of(tok[0]);
    int v = id_of(tok[1]);
    long long key = static_cast<long long>(std::min(u, v)) << 32 | static_cast<unsigned>(std::max(u, v));
    if (!seen.insert(key).second) continue;
    edges.push_back({u, v, w});
  }
  if (ids.empty()) throw Error(Errc::ParseError, "no edges");
  return Graph::from_edges(static_cast<int>(ids.size()), edges);
}

inline Graph from_edge_list_string(const std::string& text) {
  std::istringstream in(text);
  return from_edge_list(in);
}

/// Writes `i j weight` per edge (i < j) with round-trippable reals.
inline void to_edge_list(const Graph& g, std::ostream& out) {
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_real(e.weight) << '\n';
}

inline std::string to_edge_list_string(const Graph& g) {
  std::ostringstream out;
  to_edge_list(g, out);
  return out.str();
}

}  // namespace selfloop

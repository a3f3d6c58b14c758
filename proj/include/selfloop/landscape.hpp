#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "selfloop/format.hpp"
#include "selfloop/graph.hpp"

namespace selfloop {

/// Self-interaction landscape: how each vertex's self-loop weight is derived
/// from its degree (or given explicitly).
struct LandscapeSpec {
  enum class Kind { Zero, ExpNegK, LnK, OneMinusInvK, InvKPlusOne, Constant, Explicit };

  Kind kind = Kind::Zero;
  double value = 0.0;           // Constant
  std::vector<double> values;   // Explicit, indexed by vertex

  static LandscapeSpec zero() { return {}; }
  static LandscapeSpec exp_neg_k() { return {Kind::ExpNegK, 0.0, {}}; }
  static LandscapeSpec ln_k() { return {Kind::LnK, 0.0, {}}; }
  static LandscapeSpec one_minus_inv_k() { return {Kind::OneMinusInvK, 0.0, {}}; }
  static LandscapeSpec inv_k_plus_one() { return {Kind::InvKPlusOne, 0.0, {}}; }
  static LandscapeSpec constant(double v) { return {Kind::Constant, v, {}}; }
  static LandscapeSpec explicit_values(std::vector<double> v) {
    return {Kind::Explicit, 0.0, std::move(v)};
  }

  /// Loop weight for a vertex of degree k >= 1 (not meaningful for Explicit).
  double evaluate(int k) const {
    const double kd = k;
    switch (kind) {
      case Kind::Zero: return 0.0;
      case Kind::ExpNegK: return std::exp(-kd);
      case Kind::LnK: return std::log(kd);
      case Kind::OneMinusInvK: return 1.0 - 1.0 / kd;
      case Kind::InvKPlusOne: return 1.0 / (kd + 1.0);
      case Kind::Constant: return value;
      case Kind::Explicit: break;
    }
    throw Error(Errc::LandscapeSizeMismatch, "explicit landscape has no degree rule");
  }
};

inline Graph apply_landscape(const Graph& g, const LandscapeSpec& spec) {
  if (spec.kind == LandscapeSpec::Kind::Explicit) return g.with_self_loops(spec.values);
  if (spec.kind == LandscapeSpec::Kind::Constant && !(spec.value >= 0.0))
    throw Error(Errc::NegativeLandscapeValue, "constant " + format_real(spec.value));
  std::vector<double> loops(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    // Isolated vertices carry no loop; validation rejects them anyway.
    loops[static_cast<std::size_t>(i)] = g.degree(i) > 0 ? spec.evaluate(g.degree(i)) : 0.0;
  }
  return g.with_self_loops(std::move(loops));
}

inline std::string to_string(const LandscapeSpec& s) {
  using K = LandscapeSpec::Kind;
  switch (s.kind) {
    case K::Zero: return "zero";
    case K::ExpNegK: return "exp-neg-k";
    case K::LnK: return "ln-k";
    case K::OneMinusInvK: return "one-minus-inv-k";
    case K::InvKPlusOne: return "inv-k-plus-one";
    case K::Constant: return "const:" + format_real(s.value);
    case K::Explicit: return "explicit[" + std::to_string(s.values.size()) + "]";
  }
  return "?";
}

namespace detail {
inline std::vector<double> parse_value_list(std::string_view text, char sep) {
  std::vector<double> out;
  std::string buf(text);
  std::replace(buf.begin(), buf.end(), sep, ' ');
  std::istringstream in(buf);
  for (std::string tok; in >> tok;) {
    double v = 0.0;
    if (!parse_real(tok, v)) throw Error(Errc::ParseError, "bad landscape value '" + tok + "'");
    out.push_back(v);
  }
  return out;
}
}  // namespace detail

/// Accepted forms: zero | exp-neg-k | ln-k | one-minus-inv-k | inv-k-plus-one |
/// const:<x> | explicit:<x0,x1,...> | file:<path> (one value per vertex,
/// whitespace separated, '#' comments).
inline LandscapeSpec parse_landscape(std::string_view text) {
  if (text == "zero" || text == "none") return LandscapeSpec::zero();
  if (text == "exp-neg-k") return LandscapeSpec::exp_neg_k();
  if (text == "ln-k") return LandscapeSpec::ln_k();
  if (text == "one-minus-inv-k") return LandscapeSpec::one_minus_inv_k();
  if (text == "inv-k-plus-one") return LandscapeSpec::inv_k_plus_one();
  if (text.starts_with("const:")) {
    double v = 0.0;
    if (!parse_real(text.substr(6), v)) throw Error(Errc::ParseError, std::string(text));
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error(Errc::NegativeLandscapeValue, std::string(text));
    return LandscapeSpec::constant(v);
  }
  if (text.starts_with("explicit:"))
    return LandscapeSpec::explicit_values(detail::parse_value_list(text.substr(9), ','));
  if (text.starts_with("file:")) {
    std::ifstream in{std::string(text.substr(5))};
    if (!in) throw Error(Errc::ParseError, "cannot open " + std::string(text.substr(5)));
    std::string content, line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      content += line.substr(0, hash) + ' ';
    }
    return LandscapeSpec::explicit_values(detail::parse_value_list(content, ' '));
  }
  throw Error(Errc::ParseError, "unknown landscape '" + std::string(text) + "'");
}

}  // namespace selfloop

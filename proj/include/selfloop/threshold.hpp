#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "selfloop/coalescence.hpp"
#include "selfloop/graph.hpp"
#include "selfloop/walk.hpp"

namespace selfloop {

enum class Regime { Cooperation, Spite, NeutralInfinite };

inline std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::Cooperation: return "cooperation";
    case Regime::Spite: return "spite";
    case Regime::NeutralInfinite: return "neutral_infinite";
  }
  return "?";
}

struct ThresholdResult {
  double bc_star = std::numeric_limits<double>::infinity();
  Regime regime = Regime::NeutralInfinite;
  std::optional<double> sigma;
  double numerator = 0.0;    // eta2
  double denominator = 0.0;  // eta3 - eta1
};

inline constexpr double kNeutralTolerance = 1e-12;

inline Regime classify_regime(double numerator, double denominator) noexcept {
  const double tol = kNeutralTolerance * std::max(1.0, std::abs(numerator));
  if (denominator > tol) return Regime::Cooperation;
  if (denominator < -tol) return Regime::Spite;
  return Regime::NeutralInfinite;
}

/// sigma = (x + 1) / (x - 1); an involution on the extended reals.
inline double structure_coefficient(double bc_star) {
  if (!std::isfinite(bc_star) || bc_star == 1.0)
    throw Error(Errc::UndefinedSigma, "bc*=" + std::to_string(bc_star));
  return (bc_star + 1.0) / (bc_star - 1.0);
}

/// Builds a ThresholdResult from the ratio's parts, applying the regime rule.
inline ThresholdResult make_threshold(double numerator, double denominator) {
  ThresholdResult r;
  r.numerator = numerator;
  r.denominator = denominator;
  r.regime = classify_regime(numerator, denominator);
  if (r.regime == Regime::NeutralInfinite) {
    r.bc_star = std::numeric_limits<double>::infinity();
  } else {
    r.bc_star = numerator / denominator;
    if (r.bc_star != 1.0) r.sigma = structure_coefficient(r.bc_star);
  }
  return r;
}

inline ThresholdResult critical_ratio(const CoalescenceResult& c) {
  return make_threshold(c.eta2, c.eta3_minus_eta1);
}

/// (b/c)* = eta2 / (eta3 - eta1) for a validated graph with n >= 3.
inline ThresholdResult critical_ratio(const Graph& g, const SolverOptions& opts = {}) {
  validate(g, Purpose::Threshold);
  return critical_ratio(coalescence(WalkCache(g), opts));
}

}  // namespace selfloop

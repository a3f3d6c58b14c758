#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfloop {

enum class Errc {
  // input / validation
  DuplicateEdge,
  SelfEdgeInEdgeList,
  IndexOutOfRange,
  InvalidWeight,
  Disconnected,
  AsymmetricWeights,
  TooSmall,
  NegativeLandscapeValue,
  LandscapeSizeMismatch,
  IsolatedVertex,
  UnsupportedStep,
  ParseError,
  InvalidFamilyParams,
  NotDenseRegime,
  DivisionByZero,
  UnsupportedN,
  UndefinedSigma,
  InvalidInitialState,
  ConnectivityRetriesExhausted,
  UnknownAxis,
  // numerical
  SolverDidNotConverge,
  CrossCheckFailed,
  StepLimitExceeded,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfEdgeInEdgeList: return "SelfEdgeInEdgeList";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidWeight: return "InvalidWeight";
    case Errc::Disconnected: return "Disconnected";
    case Errc::AsymmetricWeights: return "AsymmetricWeights";
    case Errc::TooSmall: return "TooSmall";
    case Errc::NegativeLandscapeValue: return "NegativeLandscapeValue";
    case Errc::LandscapeSizeMismatch: return "LandscapeSizeMismatch";
    case Errc::IsolatedVertex: return "IsolatedVertex";
    case Errc::UnsupportedStep: return "UnsupportedStep";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidFamilyParams: return "InvalidFamilyParams";
    case Errc::NotDenseRegime: return "NotDenseRegime";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::UnsupportedN: return "UnsupportedN";
    case Errc::UndefinedSigma: return "UndefinedSigma";
    case Errc::InvalidInitialState: return "InvalidInitialState";
    case Errc::ConnectivityRetriesExhausted: return "ConnectivityRetriesExhausted";
    case Errc::UnknownAxis: return "UnknownAxis";
    case Errc::SolverDidNotConverge: return "SolverDidNotConverge";
    case Errc::CrossCheckFailed: return "CrossCheckFailed";
    case Errc::StepLimitExceeded: return "StepLimitExceeded";
  }
  return "Unknown";
}

/// Numerical failures map to CLI exit code 3, everything else to 2.
constexpr bool is_numerical(Errc e) noexcept {
  return e == Errc::SolverDidNotConverge || e == Errc::CrossCheckFailed ||
         e == Errc::StepLimitExceeded;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(Errc code) : Error(code, "") {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace selfloop

#pragma once

#include <stdexcept>
#include <string>

namespace gcauchy {

// Exit-code classes for the CLI: config 2, hypothesis 3, numerical 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MixedType : HypothesisViolation {
  using HypothesisViolation::HypothesisViolation;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BigCellFailure : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

struct RegularityFailure : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

struct WeakRegularityFailure : RegularityFailure {
  using RegularityFailure::RegularityFailure;
};

struct FormMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : ConfigError {
  ParseError(const std::string& what, std::size_t pos)
      : ConfigError(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

}  // namespace gcauchy

#pragma once

#include <stdexcept>
#include <string>

namespace unclon {

// Error taxonomy shared by all modules. Configuration problems surface as
// ParameterError/CapacityError (CLI exit 1), a misbehaving strategy aborts a
// whole trial run via StrategyError (exit 2, never counted as losses), and
// verification sweeps that find a violation exit 3 without throwing.
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StrategyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Re-use of a consumed quantum value (token, decryption key, challenge state).
struct ConsumedError : std::logic_error {
  using std::logic_error::logic_error;
};

struct PuncturedPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SerializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace unclon

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ktn {

/// Zero-based position of a state inside a Network.
using StateIndex = std::uint32_t;
/// Zero-based position of an edge inside a Network.
using EdgeIndex = std::uint32_t;

inline constexpr StateIndex kNoState = std::numeric_limits<StateIndex>::max();
inline constexpr EdgeIndex kNoEdge = std::numeric_limits<EdgeIndex>::max();

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid network (self-loop, duplicate pair, saddle below a minimum, ...).
class NetworkError : public Error {
 public:
  using Error::Error;
};

/// The network is not connected where connectivity is required.
class DisconnectedError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

/// Degenerate energies where the computation needs strictly distinct values.
class GenericnessError : public Error {
 public:
  using Error::Error;
};

/// Input too large for an exhaustive or dense computation.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the offending line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant. Always indicates a bug or violated precondition.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktn

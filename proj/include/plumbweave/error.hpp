#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plumbweave {

enum class ErrorKind {
  ParseError,
  CycleDetected,
  Disconnected,
  BadRoot,
  DuplicateId,
  EmptyTree,
  BadRotation,
  UnknownVertex,
  IndexOutOfRange,
  BadDimension,
  DimensionMismatch,
  NotInvertible,
  NotAlgorithmOutput,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; what() always
/// begins with the kind name so callers can grep for the violated rule.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plumbweave

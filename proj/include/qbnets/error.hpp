#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbnets {

enum class ErrorKind {
  UnknownLabel,
  DimensionMismatch,
  InvalidState,
  InvalidChannel,
  InvalidNet,
  InvalidArgument,
  ShapeMismatch,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; `kind()`
// is the machine-readable label, `what()` carries the human detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qbnets

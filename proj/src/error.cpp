#include "qbnets/error.hpp"

namespace qbnets {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownLabel: return "unknown_label";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::InvalidState: return "invalid_state";
    case ErrorKind::InvalidChannel: return "invalid_channel";
    case ErrorKind::InvalidNet: return "invalid_net";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::ShapeMismatch: return "shape_mismatch";
    case ErrorKind::Parse: return "parse_error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace qbnets

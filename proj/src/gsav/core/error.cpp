#include "gsav/core/error.hpp"

namespace gsav {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage-error";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Format: return "format-error";
    case ErrorKind::Dimension: return "dimension-mismatch";
    case ErrorKind::Numeric: return "numeric-error";
    case ErrorKind::GradCheck: return "gradcheck-failure";
  }
  return "error";
}

}  // namespace gsav

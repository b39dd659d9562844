#include "edeco/error.hpp"

namespace edeco {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::unknown_label: return "unknown_label";
    case ErrorKind::not_hermitian: return "not_hermitian";
    case ErrorKind::non_commuting: return "non_commuting";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::cutoff: return "cutoff";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace edeco

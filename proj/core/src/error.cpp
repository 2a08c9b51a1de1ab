#include "nearcloak/error.hpp"

namespace nearcloak {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::range: return "range";
    case ErrorKind::singular_argument: return "singular_argument";
    case ErrorKind::domain: return "domain";
    case ErrorKind::orientation: return "orientation";
    case ErrorKind::invalid_parameter: return "invalid_parameter";
    case ErrorKind::shape: return "shape";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::insufficient_data: return "insufficient_data";
  }
  return "unknown";
}

}  // namespace nearcloak

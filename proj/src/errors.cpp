#include "cantor/errors.hpp"

namespace cantor {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Contract: return "contract";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Fit: return "fit";
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Range: return "range";
    case ErrorKind::Resolution: return "resolution";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Resource:
    case ErrorKind::Precision:
    case ErrorKind::Range:
    case ErrorKind::Resolution:
      return 3;
    default:
      return 2;
  }
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cantor

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

/// Error categories shared by every module. The CLI maps each one to an exit
/// code with exit_code().
enum class ErrorKind {
  Domain,      // argument outside the mathematical domain of an operation
  Contract,    // caller-side precondition on the data (e.g. vanishing orders)
  Parameter,   // numerical parameter combination that cannot work
  Fit,         // degenerate regression input
  Usage,       // malformed CLI input or config
  Resource,    // memory / size budget exceeded
  Precision,   // requested accuracy cannot be certified
  Range,       // floating-point overflow
  Resolution,  // grid too coarse for the requested truncation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

std::string_view to_string(ErrorKind kind);

/// 2 for caller mistakes, 3 for resource/precision failures.
int exit_code(ErrorKind kind);

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace cantor

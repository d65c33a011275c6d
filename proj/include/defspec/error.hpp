#pragma once

#include <stdexcept>
#include <string>

namespace defspec {

enum class ErrorKind {
  Input,
  Pole,
  Convergence,
  Infeasible,
  DegeneratePair,
  UnsupportedModel,
  IncompleteWindow,
  InsufficientWindow,
  Usage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Input: return "input error";
    case ErrorKind::Pole: return "pole error";
    case ErrorKind::Convergence: return "convergence error";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::DegeneratePair: return "degenerate pair";
    case ErrorKind::UnsupportedModel: return "unsupported model";
    case ErrorKind::IncompleteWindow: return "incomplete window";
    case ErrorKind::InsufficientWindow: return "insufficient window";
    case ErrorKind::Usage: return "usage error";
  }
  return "error";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace defspec

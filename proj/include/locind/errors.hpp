#pragma once

#include <stdexcept>
#include <string>

namespace locind {

// Error taxonomy mirrored by the CLI exit codes:
//   validation (2) - bad input, unmet precondition, unsupported request
//   budget     (3) - a configured resource limit would be exceeded
//   internal   (4) - an internal consistency cross-check failed (hard failure)
enum class ErrorKind { validation, budget, internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::validation: return 2;
      case ErrorKind::budget: return 3;
      case ErrorKind::internal: return 4;
    }
    return 4;
  }

  const char* kind_name() const {
    switch (kind_) {
      case ErrorKind::validation: return "validation";
      case ErrorKind::budget: return "budget";
      case ErrorKind::internal: return "internal_consistency";
    }
    return "internal_consistency";
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}

[[noreturn]] inline void fail_budget(const std::string& msg) {
  throw Error(ErrorKind::budget, msg);
}

[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(ErrorKind::internal, msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail_validation(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
  if (!cond) fail_internal(msg);
}

}  // namespace locind

#pragma once

#include <stdexcept>
#include <string>

namespace zetalab {

/// Failure categories shared by every module. The C API maps these one to one
/// onto zl_status codes.
enum class Errc {
  InvalidArgument = 1,
  Domain,
  PoleAtOne,
  AccuracyNotReached,
  BudgetExceeded,
  CacheVersionMismatch,
  CacheCorruption,
  BracketFailure,
  ZeroProximity,
  ConstantUnavailable,
  LimitExceeded,
  ConstraintViolation,
  TailBoundUnavailable,
  Io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace zetalab

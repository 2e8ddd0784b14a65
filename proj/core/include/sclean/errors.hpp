#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sclean {

enum class ErrorCode {
  NonRing,
  NotPrime,
  UnsupportedSize,
  RingMismatch,
  IncompleteCover,
  NonMonicDivisor,
  BudgetExceeded,
  InfiniteRing,
  NotCleanRing,
  PreconditionNotJClean,
  TwoNotUnit,
  NotInModule,
  VerificationFailed,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every contract violation raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sclean

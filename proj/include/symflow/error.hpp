#pragma once

#include <stdexcept>
#include <string>

namespace symflow {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  DepthExceeded,
  EmptySubshift,
  HorizonExceeded,
  NotHit,
  NoMarkerFound,
  PreconditionFailed,
  CapacityExceeded,
  IndexOutOfRange,
  ConstraintViolated,
  InsufficientData,
  NoMarkersFound,
  IncommensurableRoof,
  InfeasibleSchedule,
  MarkerUnavailable,
  Io,
};

const char* errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) throw Error(code, message);
}

}  // namespace symflow

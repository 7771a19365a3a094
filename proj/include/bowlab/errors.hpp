#pragma once

#include <stdexcept>
#include <string>

namespace bowlab {

enum class ErrorCode {
  InvalidConfig,
  InvalidWorkload,
  EmptyBag,
  DuplicateWorkloadId,
  UnknownReference,
  LeaseLimitExceeded,
  UnassignedWorkload,
  PlanInfeasible,
  Infeasible,
  TooLargeForOracle,
  NoEligibleResource,
  InvalidSchedule,
  InfeasibleSpec,
  IoError,
};

const char* to_string(ErrorCode code);

// Domain failures carry a code so callers can branch without matching strings.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bowlab

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kmflag {

/// Machine-readable failure categories. The CLI maps them to exit statuses.
enum class ErrorCode {
  NotGCM,
  NotSymmetrizable,
  HeightBoundExceeded,
  NotRealRoot,
  SizeLimitExceeded,
  NotInIdeal,
  IntervalNotContained,
  ZeroForm,
  DegreeCapExceeded,
  CapBoundaryGenerator,
  DegreeMismatch,
  BaseNotVertex,
  UnsupportedKind,
  PredicateViolation,
  NegativeCoefficient,
  CrossCheckFailed,
  BadInput,
};

std::string_view code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace kmflag

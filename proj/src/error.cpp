#include "kmflag/error.hpp"

namespace kmflag {

std::string_view code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotGCM: return "NotGCM";
    case ErrorCode::NotSymmetrizable: return "NotSymmetrizable";
    case ErrorCode::HeightBoundExceeded: return "HeightBoundExceeded";
    case ErrorCode::NotRealRoot: return "NotRealRoot";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::NotInIdeal: return "NotInIdeal";
    case ErrorCode::IntervalNotContained: return "IntervalNotContained";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::CapBoundaryGenerator: return "CapBoundaryGenerator";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::BaseNotVertex: return "BaseNotVertex";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::PredicateViolation: return "PredicateViolation";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::CrossCheckFailed: return "CrossCheckFailed";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

}  // namespace kmflag

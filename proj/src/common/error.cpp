#include "common/error.hpp"

namespace qf {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::kIncompatibleObservable: return "IncompatibleObservable";
    case ErrorCode::kDegenerateBlock: return "DegenerateBlock";
    case ErrorCode::kNonFaithfulState: return "NonFaithfulState";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnboundSymbol: return "UnboundSymbol";
    case ErrorCode::kScatteringNotSupported: return "ScatteringNotSupported";
    case ErrorCode::kCollapsedNorm: return "CollapsedNorm";
    case ErrorCode::kNormOverflow: return "NormOverflow";
    case ErrorCode::kStepTooLarge: return "StepTooLarge";
    case ErrorCode::kPositivityViolation: return "PositivityViolation";
    case ErrorCode::kNonHermitianObservable: return "NonHermitianObservable";
    case ErrorCode::kTruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorCode::kNonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::kZeroEvidence: return "ZeroEvidence";
    case ErrorCode::kCflViolation: return "CFLViolation";
    case ErrorCode::kSupportClipped: return "SupportClipped";
    case ErrorCode::kZeroDensityPointer: return "ZeroDensityPointer";
    case ErrorCode::kConfigParseError: return "ConfigParseError";
    case ErrorCode::kExperimentUnknown: return "ExperimentUnknown";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qf

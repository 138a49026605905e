#include "hsl/errors.hpp"

namespace hsl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::WeightNotIntegrable: return "WeightNotIntegrable";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::SupercriticalExponent: return "SupercriticalExponent";
    case ErrorCode::NotBracketed: return "NotBracketed";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::NegativeLaplacianBeyondTol: return "NegativeLaplacianBeyondTol";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::NonPositiveData: return "NonPositiveData";
    case ErrorCode::DegenerateExponent: return "DegenerateExponent";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hsl

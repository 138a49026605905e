#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsl {

// Stable error codes. The CLI prints the string form and maps each code to a
// fixed exit status, so existing values must never be renumbered.
enum class ErrorCode {
  InvalidArgument = 1,
  DimensionTooSmall = 2,
  WeightOutOfRange = 3,
  WeightNotIntegrable = 4,
  GridTooCoarse = 5,
  ZeroDenominator = 6,
  NotConverged = 7,
  SupercriticalExponent = 8,
  NotBracketed = 9,
  HypothesisViolation = 10,
  NegativeLaplacianBeyondTol = 11,
  NotASolution = 12,
  NonPositiveData = 13,
  DegenerateExponent = 14,
  IoError = 15,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace hsl

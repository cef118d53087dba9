#pragma once

#include <stdexcept>
#include <string>

namespace pxl {

enum class ErrorCode {
  kDomain = 3,
  kDegenerateLoading = 4,
  kNoRootFound = 5,
  kDivergentMoment = 6,
  kNumeric = 7,
  kNumericUnderflow = 8,
  kConfig = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define PXL_DEFINE_ERROR(Name, Code)                                       \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
  };

PXL_DEFINE_ERROR(DomainError, kDomain)
PXL_DEFINE_ERROR(DegenerateLoading, kDegenerateLoading)
PXL_DEFINE_ERROR(NoRootFound, kNoRootFound)
PXL_DEFINE_ERROR(DivergentMoment, kDivergentMoment)
PXL_DEFINE_ERROR(NumericError, kNumeric)
PXL_DEFINE_ERROR(NumericUnderflow, kNumericUnderflow)
PXL_DEFINE_ERROR(ConfigError, kConfig)

#undef PXL_DEFINE_ERROR

}  // namespace pxl

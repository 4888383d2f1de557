#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynamix {

enum class ErrorKind {
  kDimension,
  kDomain,
  kEmptyInput,
  kParse,
  kValidation,
  kCalibration,
  kUnderdetermined,
  kDegeneracy,
  kFeasibility,
  kConvergence,
  kCapacity,
  kParameter,
  kNoFittingModel,
  kIo,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is the
/// stable, machine-checkable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dynamix

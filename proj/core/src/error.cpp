#include "dynamix/error.hpp"

namespace dynamix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kCalibration: return "calibration";
    case ErrorKind::kUnderdetermined: return "underdetermined";
    case ErrorKind::kDegeneracy: return "degeneracy";
    case ErrorKind::kFeasibility: return "feasibility";
    case ErrorKind::kConvergence: return "convergence";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kNoFittingModel: return "no-fitting-model";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

}  // namespace dynamix

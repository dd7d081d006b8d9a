#pragma once

#include <stdexcept>
#include <string>

namespace ptcrum {

/// Base class for every failure raised by the library. The CLI maps these
/// onto exit code 2 (parameter problems) or structured failure records.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define PTCRUM_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(what) {}         \
    const char* kind() const noexcept override { return #Name; }    \
  };

// expr
PTCRUM_DEFINE_ERROR(PoleAtPoint)
PTCRUM_DEFINE_ERROR(BranchViolation)

// models
PTCRUM_DEFINE_ERROR(InvalidParameter)
PTCRUM_DEFINE_ERROR(InvalidShift)
PTCRUM_DEFINE_ERROR(BrokenPTRegime)
PTCRUM_DEFINE_ERROR(NoBoundStates)
PTCRUM_DEFINE_ERROR(ParameterPole)
PTCRUM_DEFINE_ERROR(IndexOutOfRange)

// darboux
PTCRUM_DEFINE_ERROR(InvalidTransformation)
PTCRUM_DEFINE_ERROR(SingularTransform)
PTCRUM_DEFINE_ERROR(SingularIntermediate)
PTCRUM_DEFINE_ERROR(AnnihilatedState)
PTCRUM_DEFINE_ERROR(NodeDetected)

// spectral
PTCRUM_DEFINE_ERROR(InvalidGrid)
PTCRUM_DEFINE_ERROR(PoleOnGrid)
PTCRUM_DEFINE_ERROR(NoConvergence)
PTCRUM_DEFINE_ERROR(BoundaryLeak)

#undef PTCRUM_DEFINE_ERROR

}  // namespace ptcrum

#pragma once

#include <stdexcept>
#include <string>

namespace ptspeed {

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define PTSPEED_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                     \
      public:                                                       \
        explicit Name(const std::string& msg) : Error(msg) {}       \
    }

PTSPEED_DEFINE_ERROR(NotHermitianError);
PTSPEED_DEFINE_ERROR(NotPositiveError);
PTSPEED_DEFINE_ERROR(OverflowError);
PTSPEED_DEFINE_ERROR(NoConvergenceError);
PTSPEED_DEFINE_ERROR(DimensionOutOfRangeError);
PTSPEED_DEFINE_ERROR(DimensionMismatchError);
PTSPEED_DEFINE_ERROR(LengthMismatchError);
PTSPEED_DEFINE_ERROR(TraceViolationError);
PTSPEED_DEFINE_ERROR(ImaginaryResidueError);
PTSPEED_DEFINE_ERROR(StepTooLargeError);
PTSPEED_DEFINE_ERROR(ZeroNormJumpError);
PTSPEED_DEFINE_ERROR(SingularMetricError);
PTSPEED_DEFINE_ERROR(NotPseudoHermitianError);
PTSPEED_DEFINE_ERROR(MaximallyMixedError);
PTSPEED_DEFINE_ERROR(NotNormalizedError);
PTSPEED_DEFINE_ERROR(ModelFormatError);
PTSPEED_DEFINE_ERROR(ConfigError);

#undef PTSPEED_DEFINE_ERROR

}  // namespace ptspeed

#pragma once

#include <stdexcept>
#include <string>

namespace paramlift {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define PARAMLIFT_DECLARE_ERROR(Name)        \
    class Name : public Error {              \
       public:                               \
        using Error::Error;                  \
    };

PARAMLIFT_DECLARE_ERROR(SyntaxError)
PARAMLIFT_DECLARE_ERROR(NotMultiAffineError)
PARAMLIFT_DECLARE_ERROR(MissingParameterError)

PARAMLIFT_DECLARE_ERROR(DistributionError)
PARAMLIFT_DECLARE_ERROR(DeadlockError)
PARAMLIFT_DECLARE_ERROR(KindError)
PARAMLIFT_DECLARE_ERROR(NotWellDefinedError)
PARAMLIFT_DECLARE_ERROR(IncompleteSchedulerError)
PARAMLIFT_DECLARE_ERROR(InvalidActionError)

PARAMLIFT_DECLARE_ERROR(CombinatorialLimitError)
PARAMLIFT_DECLARE_ERROR(DegenerateRegionError)
PARAMLIFT_DECLARE_ERROR(NotContainedError)
PARAMLIFT_DECLARE_ERROR(RegionMismatchError)

PARAMLIFT_DECLARE_ERROR(RewardParameterOverlapError)
PARAMLIFT_DECLARE_ERROR(TargetNotAlmostSureError)
PARAMLIFT_DECLARE_ERROR(NegativeRewardError)

PARAMLIFT_DECLARE_ERROR(NonConvergenceError)
PARAMLIFT_DECLARE_ERROR(UnsupportedError)

#undef PARAMLIFT_DECLARE_ERROR

}  // namespace paramlift

#pragma once

#include <stdexcept>
#include <string>

namespace mono {

// Error taxonomy. Every throw site names the violated precondition or
// invariant in the message; callers catch by type.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedGroup : Error { using Error::Error; };
struct NoParabolics : Error { using Error::Error; };
struct OnExcludedAxis : Error { using Error::Error; };
struct BadGeometry : Error { using Error::Error; };
struct SingularSlice : Error { using Error::Error; };
struct MismatchedSingularities : Error { using Error::Error; };
struct StepBlowup : Error { using Error::Error; };
struct SegmentHitsSingularity : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };
struct NotInGroup : Error { using Error::Error; };
struct NonRegularPoint : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };
struct CorruptPayload : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

} // namespace mono

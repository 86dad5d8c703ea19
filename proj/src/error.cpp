#include "symflow/error.hpp"

namespace symflow {

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::EmptySubshift: return "EmptySubshift";
    case ErrorCode::HorizonExceeded: return "HorizonExceeded";
    case ErrorCode::NotHit: return "NotHit";
    case ErrorCode::NoMarkerFound: return "NoMarkerFound";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NoMarkersFound: return "NoMarkersFound";
    case ErrorCode::IncommensurableRoof: return "IncommensurableRoof";
    case ErrorCode::InfeasibleSchedule: return "InfeasibleSchedule";
    case ErrorCode::MarkerUnavailable: return "MarkerUnavailable";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace symflow

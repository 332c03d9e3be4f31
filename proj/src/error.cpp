#include "nubot/error.hpp"

namespace nubot {

const char* toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::MonomerNotFound: return "MonomerNotFound";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::Occupied: return "Occupied";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::Blocked: return "Blocked";
    case ErrorCode::CollisionDetected: return "CollisionDetected";
    case ErrorCode::StaleEvent: return "StaleEvent";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotPowerOfTwo: return "NotPowerOfTwo";
    case ErrorCode::NotDoublePowerOfTwo: return "NotDoublePowerOfTwo";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Validation: return "Validation";
  }
  return "Unknown";
}

}  // namespace nubot

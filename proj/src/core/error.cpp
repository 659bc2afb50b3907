#include "matchstick/error.hpp"

namespace matchstick {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AmbiguousPredicate: return "AmbiguousPredicate";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::CoincidentCircles: return "CoincidentCircles";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::UnitLengthViolation: return "UnitLengthViolation";
    case ErrorCode::OffsetOutOfRange: return "OffsetOutOfRange";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::PickOutOfRange: return "PickOutOfRange";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::CollinearOverlap: return "CollinearOverlap";
    case ErrorCode::TrialExhaustion: return "TrialExhaustion";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::CandidateCountMismatch: return "CandidateCountMismatch";
    case ErrorCode::CoordinateMismatch: return "CoordinateMismatch";
    case ErrorCode::SimultaneityViolation: return "SimultaneityViolation";
    case ErrorCode::MeasurementMismatch: return "MeasurementMismatch";
    case ErrorCode::IdSequenceViolation: return "IdSequenceViolation";
    case ErrorCode::PrecisionEscalation: return "PrecisionEscalation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateBinding: return "DuplicateBinding";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::AssertionFailed: return "AssertionFailed";
    case ErrorCode::MissingOutput: return "MissingOutput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace matchstick

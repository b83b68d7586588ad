#include "blockset/error.hpp"

namespace blockset {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAPrimePower: return "NotAPrimePower";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::CodeTooLarge: return "CodeTooLarge";
    case ErrorCode::WrongField: return "WrongField";
    case ErrorCode::TooManySymbols: return "TooManySymbols";
    case ErrorCode::DegenerateCode: return "DegenerateCode";
    case ErrorCode::NonSpanningPoints: return "NonSpanningPoints";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotBlocking: return "NotBlocking";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::UnsupportedStrategy: return "UnsupportedStrategy";
    case ErrorCode::GraphTooLarge: return "GraphTooLarge";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace blockset

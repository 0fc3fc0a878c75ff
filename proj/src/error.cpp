#include "gielab/error.hpp"

namespace gielab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCM: return "InvalidCM";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorCode::PurificationMismatch: return "PurificationMismatch";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::ChannelNotCP: return "ChannelNotCP";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace gielab

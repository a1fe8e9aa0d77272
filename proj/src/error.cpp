#include "blockabs/error.hpp"

namespace blockabs {

std::string_view name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::KernelFailure: return "KernelFailure";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotSymmetry: return "NotSymmetry";
    case ErrorCode::RankInstability: return "RankInstability";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::NotJProjection: return "NotJProjection";
    case ErrorCode::NoJProjection: return "NoJProjection";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(name(code)) + ": " + detail), code_(code) {}

}  // namespace blockabs

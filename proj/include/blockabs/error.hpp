#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockabs {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonFinite,
  NotHermitian,
  NotPositive,
  KernelFailure,
  NotIdempotent,
  NotSymmetry,
  RankInstability,
  InvalidPair,
  NotJProjection,
  NoJProjection,
  PreconditionViolation,
};

/// Stable identifier for an error code, e.g. "NoJProjection".
std::string_view name(ErrorCode code);

/// All library failures are reported through this exception; `code()` is
/// what callers dispatch on, `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blockabs

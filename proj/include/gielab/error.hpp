#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gielab {

enum class ErrorCode {
  InvalidArgument,
  InvalidCM,
  NotPure,
  DimensionMismatch,
  InvalidDecomposition,
  PurificationMismatch,
  DegenerateDistribution,
  ChannelNotCP,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gielab

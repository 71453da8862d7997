#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gasket {

enum class ErrorCode {
  invalid_argument,
  malformed_word,
  malformed_address,
  depth_limit,
  query_below_depth,
  invalid_partition,
  precondition_failed,
  unknown_preset,
  non_uniform_depth,
  malformed_spec,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this exception; `code()` is
/// stable and is what the CLI serializes into its error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gasket

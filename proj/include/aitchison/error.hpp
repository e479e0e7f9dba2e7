#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aitchison {

enum class Errc {
  invalid_dims,
  non_positive_entry,
  dim_mismatch,
  not_square,
  lambda_out_of_range,
  invalid_params,
  unknown_kind,
  malformed_csv,
  empty_input,
  zero_cell_rejected,
  io_error,
  invariant_violation,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_dims: return "InvalidDims";
    case Errc::non_positive_entry: return "NonPositiveEntry";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::not_square: return "NotSquare";
    case Errc::lambda_out_of_range: return "LambdaOutOfRange";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::unknown_kind: return "UnknownKind";
    case Errc::malformed_csv: return "MalformedCsv";
    case Errc::empty_input: return "EmptyInput";
    case Errc::zero_cell_rejected: return "ZeroCellRejected";
    case Errc::io_error: return "IoError";
    case Errc::invariant_violation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace aitchison

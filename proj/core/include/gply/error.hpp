#pragma once

#include <stdexcept>
#include <string>

namespace gply {

enum class ErrorCode {
  invalid_argument,
  zero_denominator,
  zero_polynomial,
  degenerate_anisotropy,
  pole,
  sector_mismatch,
  wrong_mode,
  identically_zero,
  unsupported_regime,
  defective_matrix,
  singular_matrix,
  no_convergence,
  parse_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gply

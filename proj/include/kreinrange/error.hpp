#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kreinrange {

enum class ErrorCode {
  NotHermitian,
  Singular,
  DimensionMismatch,
  RankDeficientBasis,
  NotSelfadjoint,
  NotNonNegative,
  IllConditioned,
  Unachievable,
  NumericalBreakdown,
  BoundaryEigenvalue,
  NotAnEigenvalue,
  NeutralVector,
  KernelVector,
  DefiniteSpace,
  ZeroOperator,
  EmptyPiece,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class KreinError : public std::runtime_error {
public:
  KreinError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace kreinrange

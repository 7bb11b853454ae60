#include "kreinrange/error.hpp"

namespace kreinrange {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficientBasis: return "RankDeficientBasis";
    case ErrorCode::NotSelfadjoint: return "NotSelfadjoint";
    case ErrorCode::NotNonNegative: return "NotNonNegative";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::Unachievable: return "Unachievable";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::BoundaryEigenvalue: return "BoundaryEigenvalue";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::NeutralVector: return "NeutralVector";
    case ErrorCode::KernelVector: return "KernelVector";
    case ErrorCode::DefiniteSpace: return "DefiniteSpace";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::EmptyPiece: return "EmptyPiece";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

} // namespace kreinrange
